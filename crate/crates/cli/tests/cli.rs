use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: [&str; 24] = [
    "apple", "banana", "cherry", "grape", "lemon", "mango", "engine", "piston", "gear", "clutch", "brake", "axle",
    "violin", "cello", "flute", "oboe", "harp", "tuba", "comet", "nebula", "quasar", "pulsar", "galaxy", "orbit",
];

fn idne(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idne"))
        .args(args)
        .current_dir(cwd)
        .env("RUST_LOG", "warn")
        .env_remove("IDNE_OUTPUT_DIR")
        .output()
        .unwrap()
}

/// Four 10-document groups, each with its own six words and a ring of links.
fn write_dataset(dir: &Path) -> (PathBuf, PathBuf) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut docs = String::new();
    let mut edges = String::new();
    for g in 0..4 {
        for d in 0..10 {
            let text: Vec<&str> = (0..8).map(|_| WORDS[g * 6 + rng.random_range(0..6)]).collect();
            docs.push_str(&format!("d{g}_{d}\tgroup{g}\t{}.\n", text.join(" ")));
            edges.push_str(&format!("d{g}_{d}\td{g}_{}\n", (d + 1) % 10));
        }
    }
    let (dp, ep) = (dir.join("docs.tsv"), dir.join("edges.tsv"));
    fs::write(&dp, docs).unwrap();
    fs::write(&ep, edges).unwrap();
    (dp, ep)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn train_embed_interpret_and_eval() {
    let tmp = tempfile::tempdir().unwrap();
    let (docs, edges) = write_dataset(tmp.path());
    let out = tmp.path().join("run");
    let data = [
        "--format", "generic", "--docs", s(&docs), "--edges", s(&edges), "--min-df", "2", "--max-df", "0.5",
    ];
    let model = ["--topics", "3", "--dim", "8", "--steps", "200", "--batch-size", "8", "--lr", "0.01"];

    let mut args = vec!["train"];
    args.extend(data);
    args.extend(model);
    args.extend(["--output-dir", s(&out)]);
    let r = idne(&args, tmp.path());
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let loss = fs::read_to_string(out.join("loss.csv")).unwrap();
    assert_eq!(loss.lines().next(), Some("step,loss"));
    assert_eq!(loss.lines().count(), 201);
    assert_eq!(fs::read_to_string(out.join("vocab.txt")).unwrap().lines().count(), 24);
    let ckpt = out.join("model.idne");

    fs::write(tmp.path().join("new.tsv"), "n1\tapple mango lemon\nn2\tnothing known here\n").unwrap();
    let emb = tmp.path().join("emb.tsv");
    let r = idne(
        &["embed", "--checkpoint", s(&ckpt), "--docs", "new.tsv", "--output", s(&emb)],
        tmp.path(),
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let rows: Vec<(String, Vec<f32>)> = fs::read_to_string(&emb)
        .unwrap()
        .lines()
        .map(|l| {
            let (id, v) = l.split_once('\t').unwrap();
            (id.to_owned(), v.split(' ').map(|x| x.parse().unwrap()).collect())
        })
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].0, "n1");
    assert!(rows.iter().all(|r| r.1.len() == 8));
    assert!(rows[0].1.iter().any(|&v| v != 0.0));
    assert!(rows[1].1.iter().all(|&v| v == 0.0));

    let table = tmp.path().join("topics.txt");
    let r = idne(
        &["interpret", "topics", "--checkpoint", s(&ckpt), "--top", "4", "--output", s(&table)],
        tmp.path(),
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(!fs::read_to_string(&table).unwrap().is_empty());

    let stem = tmp.path().join("note");
    let r = idne(
        &["interpret", "annotate", "--checkpoint", s(&ckpt), "--text", "A cello and a harp, then an orbit.", "--output", s(&stem)],
        tmp.path(),
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(fs::read_to_string(stem.with_extension("html")).unwrap().contains("cello"));
    assert!(fs::read_to_string(stem.with_extension("txt")).unwrap().contains("topic"));

    let r = idne(
        &["interpret", "annotate", "--checkpoint", s(&ckpt), "--text", "zzz qqq"],
        tmp.path(),
    );
    assert_eq!(r.status.code(), Some(1));

    let mut args = vec!["eval", "--task", "traditional", "--checkpoint", s(&ckpt), "--ratios", "0.5", "--reps", "2"];
    args.extend(data);
    args.extend(["--output-dir", s(&out)]);
    let r = idne(&args, tmp.path());
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let csv = fs::read_to_string(out.join("eval_traditional.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("eval_traditional.json")).unwrap()).unwrap();
    assert!(json.to_string().contains("mean"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let tmp = tempfile::tempdir().unwrap();
    let (docs, edges) = write_dataset(tmp.path());
    let conf = tmp.path().join("run.conf");
    fs::write(
        &conf,
        format!(
            "# small run\nformat = generic\ndocs = {}\nedges = {}\nmin_df = 2\nmax_df = 0.5\ntopics = 2\ndim = 4\nsteps = 0\nbatch_size = 8\n",
            s(&docs),
            s(&edges)
        ),
    )
    .unwrap();
    let r = idne(&["train", "--config", s(&conf)], tmp.path());
    assert_eq!(r.status.code(), Some(2));
    let r = idne(&["train", "--config", s(&conf), "--steps", "20"], tmp.path());
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(tmp.path().join("idne-out/model.idne").is_file());
}

#[test]
fn invalid_invocations_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let (docs, edges) = write_dataset(tmp.path());
    let base = ["train", "--format", "generic", "--docs", s(&docs), "--edges", s(&edges), "--min-df", "2"];
    for extra in [&["--steps", "0"][..], &["--batch-size", "7"], &["--dim", "0"], &["--max-df", "1.5"]] {
        let mut args = base.to_vec();
        args.extend(extra);
        assert_eq!(idne(&args, tmp.path()).status.code(), Some(2), "{extra:?}");
    }
    assert_eq!(idne(&[], tmp.path()).status.code(), Some(2));
    assert_eq!(idne(&["train", "--steps", "ten"], tmp.path()).status.code(), Some(2));
    assert_eq!(
        idne(&["train", "--format", "generic", "--docs", "missing.tsv", "--edges", s(&edges)], tmp.path()).status.code(),
        Some(2)
    );
    assert_eq!(idne(&["embed", "--checkpoint", "none.idne", "--docs", s(&docs)], tmp.path()).status.code(), Some(2));
}

#[test]
fn mismatched_vocabulary_is_refused() {
    let tmp = tempfile::tempdir().unwrap();
    let (docs, edges) = write_dataset(tmp.path());
    let out = tmp.path().join("m");
    let r = idne(
        &[
            "train", "--format", "generic", "--docs", s(&docs), "--edges", s(&edges), "--min-df", "2", "--max-df", "0.5",
            "--topics", "2", "--dim", "4", "--steps", "5", "--batch-size", "8", "--output-dir", s(&out),
        ],
        tmp.path(),
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let other = tmp.path().join("other.txt");
    fs::write(&other, "alpha\nbeta\n").unwrap();
    let r = idne(
        &["interpret", "topics", "--checkpoint", s(&out.join("model.idne")), "--vocab", s(&other)],
        tmp.path(),
    );
    assert_eq!(r.status.code(), Some(1));
}
