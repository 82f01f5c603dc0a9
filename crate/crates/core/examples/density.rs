//! Exact maximum average degree, densest witness and girth.

use tnsd::density::max_average_degree;
use tnsd::graph::planar_girth_mad_bound;
use tnsd::io::parse_graph6;
use tnsd::{Graph, Result};

fn main() -> Result<()> {
    let graphs = [
        ("C5", Graph::cycle(5)),
        ("K4", Graph::complete(4)),
        ("K3,3", Graph::complete_bipartite(3, 3)),
        ("Petersen", parse_graph6(b"IheA@GUAo")?),
    ];
    for (name, g) in &graphs {
        let mad = max_average_degree(g)?;
        let girth = g.girth().map_or("none".to_string(), |x| x.to_string());
        println!("{name}: mad = {}, densest set {:?}, girth {girth}", mad.value, mad.witness);
    }
    for girth in 3..=6 {
        println!("planar graphs of girth {girth} have mad < {}", planar_girth_mad_bound(girth)?);
    }
    Ok(())
}
