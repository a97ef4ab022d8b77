//! Builds a bipartite graph with no 4-cycle from a bilinear map over `F_2`:
//! find a map with few annihilating plane pairs, delete the edges they
//! cover, and verify what is left.

use isotropy::boxfree::{self, EdgeListHeader, PipelineConfig};
use isotropy::Field;

fn main() -> isotropy::Result<()> {
    let f2 = Field::with_order(2)?;
    let (n, d, m) = (3, 2, 1);
    let run = boxfree::run_pipeline(
        &f2,
        n,
        d,
        m,
        PipelineConfig {
            seed: 42,
            ..PipelineConfig::default()
        },
    )?;
    println!("{}", serde_json::to_string_pretty(&run.certificate).expect("serializable"));

    let free = boxfree::freeness_check(&run.pruned, 1 << 24)?.is_none();
    println!("pruned graph is free of complete boxes: {free}");
    let text = run.pruned.to_edge_list(EdgeListHeader { d, n, q: 2, m });
    println!("edge list header: {}", text.lines().next().unwrap_or(""));
    Ok(())
}
