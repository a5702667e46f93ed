//! End-to-end run on a word list held in memory.
//!
//!     cargo run --example small_dictionary

use anagram_group::report::{emit_presentation, emit_progress, emit_witness_table, ReportFormat};
use anagram_group::{run, Dictionary, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let words = [
        "able", "bale", "albe", "tea", "eat", "eta", "ate", "stop", "pots", "tops", "opts", "post", "spot", "ab", "ba",
        "listen", "silent", "enlist", "tinsel",
    ];
    let d = Dictionary::from_strs("demo", &words)?;
    let r = run(&d, &RunConfig::default())?;

    print!("{}", emit_progress(&r, ReportFormat::Text)?);
    println!();
    print!("{}", emit_witness_table(&r, ReportFormat::Text)?);
    println!();
    print!("{}", emit_presentation(&r, ReportFormat::Text)?);
    if !r.unresolved_pairs.is_empty() {
        println!("\nrelations not explained by commutators:");
        for (a, b) in &r.unresolved_pairs {
            println!("  {a} = {b}");
        }
    }
    Ok(())
}
