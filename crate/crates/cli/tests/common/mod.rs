//! Drives the `placement` binary against a scratch data directory.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// The worked example as CLI flags: name, gender, birth date, age, education,
/// experience.
pub const WORKED: [(&str, &str, &str, &str, &str, &str); 5] = [
    ("TERE", "F", "1992-04-26", "20", "SMA", "0"),
    ("yeli", "F", "1988-01-09", "25", "SMP", "3"),
    ("mona", "F", "1991-06-30", "22", "SMA", "3"),
    ("DEDE", "M", "1992-04-28", "20", "SMA", "2"),
    ("MINA", "F", "1990-01-21", "23", "DI", "6"),
];

pub const SCOPE: [&str; 6] = ["--country", "Malaysia", "--placement", "Nada Persada", "--position", "PRT"];

pub const MINA_CSV_ROW: &str = "1,5,MINA,0.75,0.50,1.00,0.50,0.75,1.00,1.00,1.00,0.38,0.75,1.00,0.75,2.88";

pub struct Cli {
    dir: tempfile::TempDir,
}

impl Cli {
    pub fn new() -> Cli {
        Cli { dir: tempfile::tempdir().unwrap() }
    }

    pub fn data(&self) -> PathBuf {
        self.dir.path().join("data")
    }

    pub fn path(&self) -> &Path {
        self.dir.path()
    }

    pub fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_placement"))
            .arg("--data-dir")
            .arg(self.data())
            .args(args)
            .env_remove("PLACEMENT_DATA_DIR")
            .output()
            .expect("spawn placement")
    }

    /// Runs and requires exit 0; returns stdout.
    pub fn ok(&self, args: &[&str]) -> String {
        let out = self.run(args);
        assert!(
            out.status.success(),
            "placement {args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        String::from_utf8(out.stdout).unwrap()
    }

    pub fn add(&self, (name, gender, birth, age, edu, exp): (&str, &str, &str, &str, &str, &str)) -> Output {
        let mut args = vec![
            "add", "--name", name, "--gender", gender, "--birth-date", birth, "--age", age, "--education", edu,
            "--psych", "Recommended", "--experience", exp, "--agency", "PT Citra Karya", "--intake-date",
            "2013-04-29",
        ];
        args.extend(SCOPE);
        self.run(&args)
    }

    pub fn seeded() -> Cli {
        let cli = Cli::new();
        for (i, c) in WORKED.into_iter().enumerate() {
            let out = cli.add(c);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            assert_eq!(String::from_utf8(out.stdout).unwrap(), format!("id: {}\n", i + 1));
        }
        cli
    }
}

#[path = "../../../core/tests/common/fixture.rs"]
pub mod fixture;
#[allow(dead_code)]
#[path = "../../../core/tests/common/instances.rs"]
pub mod instances;
#[allow(dead_code)]
#[path = "../../../core/tests/common/oracle.rs"]
pub mod oracle;
