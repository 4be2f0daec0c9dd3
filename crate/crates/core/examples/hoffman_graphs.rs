//! The classical Hoffman bound on a few regular graphs, next to the exact values.

use simplicial_hoffman::bounds::hoffman_graph_bound;
use simplicial_hoffman::generators::{
    complete_multipartite_graph, cycle_graph, random_regular_graph,
};
use simplicial_hoffman::invariants::{chromatic_number, independence_number, OracleConfig};

fn main() -> simplicial_hoffman::Result<()> {
    let cfg = OracleConfig::default();
    let graphs = [
        ("C5", cycle_graph(5)?),
        ("C6", cycle_graph(6)?),
        ("K3,3,3", complete_multipartite_graph(&[3, 3, 3])?),
        ("random 3-regular on 10", random_regular_graph(10, 3, 7)?),
    ];
    println!(
        "{:<24} {:>8} {:>3} {:>8} {:>3}",
        "graph", "i <=", "i", "chi >=", "chi"
    );
    for (name, g) in &graphs {
        let b = hoffman_graph_bound(g)?;
        let (i, _) = independence_number(g, 1, &cfg)?;
        let (chi, _) = chromatic_number(g, 1, &cfg)?;
        let chi_lower = b
            .chi_lower
            .value()
            .map_or("inf".into(), |v| format!("{v:.3}"));
        println!(
            "{name:<24} {:>8.3} {i:>3} {chi_lower:>8} {chi:>3}",
            b.i_upper
        );
    }
    Ok(())
}
