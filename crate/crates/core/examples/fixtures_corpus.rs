//! Generating a corpus and running decompose12 against its expectations.

use quadext::cli::run_suite;
use quadext::fixtures::{i3_corpus, negative_corpus, read_corpus, write_corpus};

fn main() {
    let mut corpus = i3_corpus(42, 5, 10).unwrap();
    corpus.extend(negative_corpus(42, 5));
    let mut buf = Vec::new();
    write_corpus(&mut buf, &corpus).unwrap();
    print!("{}", String::from_utf8_lossy(&buf));
    let report = run_suite(&read_corpus(&buf[..]).unwrap());
    println!(
        "{} instances, {} passed, {} failed",
        report.total, report.passed, report.failed
    );
}
