use std::process::{Command, Output};

fn listind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_listind")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ordinal_expressions() {
    let o = listind(&["ord", "w*2+3 - w"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "w + 3\n"));
    let o = listind(&["ord", "divmod(w^2, w)"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "(w, 0)\n"));
    let o = listind(&["ord", "1 - 2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn evaluation() {
    for (args, want) in [
        (["eval", "m2", "Y ++ X = X", "Y=N(0); X=rep(N(0))"], "true\n"),
        (["eval", "m1:2", "A(X)", "X=N(0)"], "false\n"),
        (["eval", "m1:2", "A(X)", "X=[1]"], "true\n"),
    ] {
        let o = listind(&args);
        assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), want), "{args:?}");
    }
    let o = listind(&["eval", "m1:2", "A(X) & X ++ X = X", "X=[1]"]);
    assert_eq!(o.status.code(), Some(2), "append outside the signature");
    let o = listind(&["eval", "m2", "X = nil", "Y=nil"]);
    assert_eq!(o.status.code(), Some(2), "unassigned variable");
    let o = listind(&["eval", "m1:2", "A(X)", "X=[1]", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["value"], true);
    assert_eq!(json["assignment"]["X"], "[1]");
}

#[test]
fn counterexample_certificates() {
    let o = listind(&["check", "m1:3", "counterexample", "big-step", "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("X = N(0)"));
    let o = listind(&["check", "m2", "counterexample", "right-cancellation", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["witness"]["Y"], "N(0)");
    assert_eq!(json["witness"]["X"], "rep(N(0))");
    assert_eq!(listind(&["check", "m2", "counterexample", "right-decomposition"]).status.code(), Some(0));
    assert_eq!(listind(&["check", "m2", "counterexample", "big-step"]).status.code(), Some(2));
    assert_eq!(listind(&["check", "m1:1", "counterexample", "big-step"]).status.code(), Some(2));
    assert_eq!(listind(&["check", "m1:2", "counterexample", "right-cancellation"]).status.code(), Some(2));
}

#[test]
fn axiom_suites() {
    let o = listind(&["check", "m2", "axioms", "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with("pass (2000 samples)")).count(), 5);
    let o = listind(&["check", "m1:3", "axioms", "--samples", "500"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn induction_checks() {
    let o = listind(&["check", "m1:3", "induction", "A(X)", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("overall: axiom-instance-falsified\n"));
    let o = listind(&["check", "m1:3", "induction", "A(X)", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("overall: premise-falsified\n"));
    let o = listind(&["check", "m2", "induction", "X ++ cons(0, nil) != X", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = listind(&["check", "m2", "induction", "forall X:list. A(X)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = listind(&["check", "m2", "induction", "X = nil", "--var", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = listind(&[
            "check", "m2", "induction", "X ++ X != cons(1, X)", "--m", "2", "--seed", "7", "--budget", "300", "--json",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        (std::fs::read(path).unwrap(), o.stdout)
    };
    let (a, out_a) = run("a.json");
    let (b, _) = run("b.json");
    assert_eq!(a, b);
    let json: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(json["seed"], 7);
    assert_eq!(json["budget"], 300);
    assert_eq!(serde_json::from_slice::<serde_json::Value>(&out_a).unwrap(), json);
}

#[test]
fn benchmark_emission() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = listind(&["emit", "smtlib2", "--m", "1..5", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 5);
    let tptp = dir.path().join("tptp");
    let o = listind(&["emit", "tptp", "--m", "2", tptp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&tptp).unwrap().count(), 1);

    let blocked = dir.path().join("file");
    std::fs::write(&blocked, "").unwrap();
    let o = listind(&["emit", "tptp", "--m", "2", blocked.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(listind(&["emit", "tptp", "--m", "0", "x"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(listind(&[]).status.code(), Some(2));
    assert_eq!(listind(&["eval", "m9", "A(X)"]).status.code(), Some(2));
    assert_eq!(listind(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(listind(&["--help"]).status.code(), Some(0));
}
