//! Presentation of the anagram group of a word list on disk.
//!
//!     cargo run --release --example word_list -- /path/to/words.txt
//!
//! Lines with characters outside a-z are skipped.

use std::time::Instant;

use anagram_group::report::{emit_presentation, emit_progress, emit_verification, ReportFormat};
use anagram_group::{load_dictionary, run, RunConfig, SanitizePolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let Some(path) = std::env::args_os().nth(1) else {
        eprintln!("usage: word_list <words.txt>");
        std::process::exit(1);
    };
    let d = load_dictionary(&path, SanitizePolicy::Lenient)?;
    println!("{} words ({} lines skipped)", d.len(), d.skipped_lines());

    let start = Instant::now();
    let r = run(&d, &RunConfig::default())?;
    println!("finished in {:.2?}\n", start.elapsed());

    print!("{}", emit_progress(&r, ReportFormat::Text)?);
    println!(
        "residual phase: {} buckets in, {} more commutators, {} rounds\n",
        r.residual_buckets.len(),
        r.commutators.len() - r.loop_commutators(),
        r.residual_rounds
    );
    print!("{}", emit_presentation(&r, ReportFormat::Text)?);
    if let Some(report) = &r.verification {
        println!();
        print!("{}", emit_verification(report, ReportFormat::Text)?);
    }
    Ok(())
}
