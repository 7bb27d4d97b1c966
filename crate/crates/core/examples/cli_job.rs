//! Drive the command-line front end in process with a small job file.
fn main() {
    let job = r#"{
  "problem": {"kind": "tsp", "distances": [[0,2,5],[2,0,3],[5,3,0]]},
  "penalties": [{"kind": "perm", "weight": 11}],
  "encoding": {"*": {"kind": "unary"}},
  "beta": 0.4
}"#;
    let path = std::env::temp_dir().join(format!("dqir-example-{}.json", std::process::id()));
    std::fs::write(&path, job).unwrap();
    let p = path.to_str().unwrap();
    for args in [vec!["dqir", "encode", p], vec!["dqir", "verify", p]] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = dqir::cli::run(args.clone(), &mut out, &mut err);
        println!("$ {} -> exit {code}\n{}{}", args.join(" "), String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
    std::fs::remove_file(path).ok();
}
