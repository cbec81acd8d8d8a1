use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn extcat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extcat")).current_dir(dir).args(args).output().expect("run extcat")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn outputs_are_byte_identical_without_banner() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let runs: [&[&str]; 3] = [
        &["--no-banner", "solve", "--type", "hyperbolic", "--smax", "2", "--out", "OUT.csv"],
        &["--no-banner", "revolve", "--type", "parabolic", "--rows", "12", "--ntheta", "9", "--projection", "poincare", "--out", "OUT.obj"],
        &["--no-banner", "relax", "--segments", "16", "--out", "OUT.csv"],
    ];
    for args in runs {
        let mut files = Vec::new();
        for tag in ["a", "b"] {
            let args: Vec<String> = args.iter().map(|a| a.replace("OUT", tag)).collect();
            let refs: Vec<&str> = args.iter().map(String::as_str).collect();
            let out = extcat(d, &refs);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
            let ext = if args.iter().any(|a| a == "revolve") { ["obj", "h.csv"] } else if args.iter().any(|a| a == "relax") { ["csv", "json"] } else { ["csv", "csv"] };
            files.push((read(d, &format!("{tag}.{}", ext[0])), read(d, &format!("{tag}.{}", ext[1]))));
        }
        assert!(files[0] == files[1], "{args:?}");
        assert!(!files[0].0.starts_with(b"#"));
    }
}

#[test]
fn banner_is_written_by_default() {
    let dir = TempDir::new().unwrap();
    let out = extcat(dir.path(), &["solve", "--smax", "0.5", "--out", "c.csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(read(dir.path(), "c.csv")).unwrap();
    assert!(text.starts_with("# extcat "));
}

#[test]
fn config_file_values_yield_to_flags() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    std::fs::write(d.join("run.toml"), "[solve]\nr = 2.0\nsmax = 1.0\nstep = 0.01\nout = \"from_file.csv\"\n").unwrap();
    let out = extcat(d, &["--config", "run.toml", "--no-banner", "solve"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(read(d, "from_file.csv")).unwrap();
    assert_eq!(text.lines().count(), 102);
    let out = extcat(d, &["--config", "run.toml", "--no-banner", "solve", "--smax", "0.5", "--out", "flag.csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(read(d, "flag.csv")).unwrap().lines().count(), 52);
}

#[test]
fn check_subset_passes() {
    let dir = TempDir::new().unwrap();
    let out = extcat(dir.path(), &["check", "--only", "metric,horocatenary", "--samples", "10"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("horocatenary"));
    assert!(!text.contains("clairaut"));
}

#[test]
fn revolve_reads_a_solved_curve() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(code(&extcat(d, &["solve", "--out", "e.csv"])), 0);
    let out = extcat(d, &["revolve", "--input", "e.csv", "--out", "e.obj"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("max|H|")).unwrap();
    let h: f64 = line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!(h < 1e-5, "{h}");
}

#[test]
fn negative_radius_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let out = extcat(dir.path(), &["solve", "--r", "-1"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("r must be positive"));
}

#[test]
fn negative_slack_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&extcat(dir.path(), &["relax", "--slack", "-0.1"])), 1);
}

#[test]
fn unknown_flag_or_family_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&extcat(dir.path(), &["solve", "--bogus", "1"])), 1);
    assert_eq!(code(&extcat(dir.path(), &["check", "--only", "nothing"])), 1);
}

#[test]
fn malformed_inputs_are_validation_errors() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.toml"), "[solve]\nradius = 2.0\n").unwrap();
    assert_eq!(code(&extcat(d, &["--config", "bad.toml", "solve"])), 1);
    std::fs::write(d.join("bad.csv"), "not,a,curve\n").unwrap();
    assert_eq!(code(&extcat(d, &["revolve", "--input", "bad.csv"])), 1);
}

#[test]
fn start_below_the_reference_plane_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&extcat(dir.path(), &["solve", "--u0", "-0.5"])), 2);
    assert_eq!(code(&extcat(dir.path(), &["relax", "--start", "-0.5,0", "--end", "1,0.5"])), 2);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(code(&extcat(d, &["solve", "--out", "missing/dir/c.csv"])), 3);
    assert_eq!(code(&extcat(d, &["--config", "absent.toml", "solve"])), 3);
}
