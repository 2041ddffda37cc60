//! Try to split the family into d uncrossable subfamilies.
//!
//! ```text
//! cargo run --example partition -- 3 2
//! ```

use pliable::checkers::{conflict_witness, partition_uncrossable, PartitionOutcome};
use pliable::{construct_family, Config, TieBreak};

fn main() {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map_or(3, |a| a.parse().expect("k must be an integer"));
    let d: usize = args.next().map_or(2, |a| a.parse().expect("d must be an integer"));
    let cfg = Config::default();
    let f = construct_family(k, TieBreak::LexMin, &cfg).expect("k within the configured cap");
    for c in conflict_witness(&f).expect("constructed families are seeded") {
        println!(
            "V{} / V{}: union {} absent {}, difference {} absent {}",
            c.i, c.j, c.union, c.union_absent, c.difference, c.difference_absent
        );
    }
    match partition_uncrossable(&f, d, cfg.partition_node_budget) {
        PartitionOutcome::Found { blocks } => {
            println!("partition into {} blocks:", blocks.len());
            for b in blocks {
                let sets: Vec<String> = b.iter().map(|&i| f.set(i).to_string()).collect();
                println!("  {}", sets.join(" "));
            }
        }
        PartitionOutcome::Impossible { nodes } => println!("no partition into {d} blocks ({nodes} search nodes)"),
        PartitionOutcome::BudgetExhausted { nodes } => println!("search budget spent after {nodes} nodes"),
    }
}
