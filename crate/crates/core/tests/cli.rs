use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treegh"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("treegh-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

const T: &str = "5\n0 1 1\n1 2 3/2\n1 3 2\n3 4 1\n";
const U: &str = "4\n0 1 2\n0 2 1\n0 3 1\n";

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
}

#[test]
fn gh_of_a_tree_with_itself() {
    let d = scratch("self");
    fs::write(d.join("T.tree"), T).unwrap();
    let o = bin(&["gh", "T.tree", "T.tree"], &d);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(field(&s, "certified"), "0/1");
    assert_eq!((field(&s, "lower"), field(&s, "upper")), ("0/1", "0/1"));
}

#[test]
fn json_matches_plain() {
    let d = scratch("json");
    fs::write(d.join("T.tree"), T).unwrap();
    fs::write(d.join("U.tree"), U).unwrap();
    for mode in ["diameter", "all"] {
        let plain = stdout(&bin(&["gh", "T.tree", "U.tree", "--mode", mode], &d));
        let js: serde_json::Value =
            serde_json::from_str(&stdout(&bin(&["gh", "T.tree", "U.tree", "--mode", mode, "--json"], &d))).unwrap();
        for key in ["delta_hat", "certified", "lower", "upper"] {
            assert_eq!(js[key].as_str().unwrap(), field(&plain, key), "{key}");
        }
        assert_eq!(js["c_factor"].to_string(), field(&plain, "c_factor"));
    }
}

#[test]
fn candidates_of_identical_single_nodes() {
    let d = scratch("cand");
    fs::write(d.join("A.mtree"), "1\n0 2 -1\n").unwrap();
    let o = bin(&["candidates", "A.mtree", "A.mtree"], &d);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0/1\n");
}

#[test]
fn validation_and_size_guard_exit_codes() {
    let d = scratch("codes");
    fs::write(d.join("T.tree"), T).unwrap();
    fs::write(d.join("A.mtree"), "2\n0 0 -1\n1 -1 0\n").unwrap();
    let o = bin(&["decide", "A.mtree", "A.mtree", "--eps", "-1"], &d);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(bin(&["gh", "T.tree"], &d).status.code(), Some(1));
    assert_eq!(bin(&["gh", "T.tree", "T.tree", "--fast"], &d).status.code(), Some(1));
    fs::write(d.join("bad.tree"), "3\n0 1 1\n").unwrap();
    assert_eq!(bin(&["gh", "bad.tree", "T.tree"], &d).status.code(), Some(1));
    let o = bin(&["oracle", "gh", "T.tree", "T.tree", "--max-size", "3"], &d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn merge_tree_round_trips() {
    let d = scratch("mt");
    fs::write(d.join("T.tree"), T).unwrap();
    for root in 0..5 {
        let r = root.to_string();
        let text = stdout(&bin(&["merge-tree", "T.tree", "--root", &r], &d));
        let m = treegh::MergeTree::parse(&text).unwrap();
        assert_eq!(m.to_text(), text);
    }
    assert_eq!(bin(&["merge-tree", "T.tree", "--root", "9"], &d).status.code(), Some(1));
}

#[test]
fn interleave_maps_verify() {
    let d = scratch("maps");
    fs::write(d.join("T.tree"), T).unwrap();
    fs::write(d.join("U.tree"), U).unwrap();
    fs::write(d.join("A.mtree"), stdout(&bin(&["merge-tree", "T.tree", "--root", "0"], &d))).unwrap();
    fs::write(d.join("B.mtree"), stdout(&bin(&["merge-tree", "U.tree", "--root", "1"], &d))).unwrap();
    let s = stdout(&bin(&["interleave", "A.mtree", "B.mtree", "--maps-out", "maps.txt"], &d));
    let certified = field(&s, "certified").to_string();
    let v = stdout(&bin(&["verify", "A.mtree", "B.mtree", "maps.txt", "--eps", &certified], &d));
    assert_eq!(field(&v, "overall"), "PASS", "{v}");
    assert_eq!(v.matches("PASS").count(), 7);
    // the oracle value lies between pivot and certificate
    let exact: treegh::Rational = field(&stdout(&bin(&["oracle", "interleave", "A.mtree", "B.mtree"], &d)), "interleaving")
        .parse()
        .unwrap();
    let pivot: treegh::Rational = field(&s, "pivot").parse().unwrap();
    assert!(pivot <= exact && exact <= certified.parse().unwrap());
}

#[test]
fn gen_hard_writes_stable_files() {
    let d = scratch("gen");
    let o = bin(&["gen-hard", "--x", "1,2,3", "--m", "2", "--out-prefix", "P"], &d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        fs::read_to_string(d.join("P.t2.tree")).unwrap(),
        "10\n0 1 1/2\n0 2 2/1\n0 6 2/1\n2 3 8/1\n2 4 8/1\n2 5 8/1\n6 7 8/1\n6 8 8/1\n6 9 8/1\n"
    );
    let meta = fs::read_to_string(d.join("P.meta")).unwrap();
    assert_eq!(meta, "x: 1,2,3\nm: 2\nlambda: 7/1\nrho: 1/2\nabar: 3\nlabel: yes\n");
    let t1 = treegh::MetricTree::parse(&fs::read_to_string(d.join("P.t1.tree")).unwrap()).unwrap();
    assert_eq!(t1.node_count(), 11);

    let o = bin(&["gen-hard", "--y", "1,1,1", "--out-prefix", "Q", "--json"], &d);
    let js: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(js["label"], "yes");
    assert_eq!(js["t2_nodes"], 2 + 1 + 12);
    assert_eq!(bin(&["gen-hard", "--x", "1,2", "--m", "2", "--out-prefix", "R"], &d).status.code(), Some(1));
}

#[test]
fn decimal_rendering() {
    let d = scratch("dec");
    fs::write(d.join("A.mtree"), "1\n0 -1/3 -1\n").unwrap();
    fs::write(d.join("B.mtree"), "1\n0 0 -1\n").unwrap();
    let s = stdout(&bin(&["interleave", "A.mtree", "B.mtree", "--decimal", "4"], &d));
    assert_eq!(field(&s, "certified"), "0.3333");
}
