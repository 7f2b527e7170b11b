#![allow(dead_code)]

use maglap_core::graph::Graph;

/// Path 0-4-5 hanging off the 4-cycle 1-2-4-3. Six vertices, one cycle.
pub const ONE_CYCLE_EDGES: [(usize, usize); 6] = [(0, 4), (4, 5), (1, 2), (1, 3), (2, 4), (3, 4)];

/// Six vertices, eight edges, three independent cycles.
pub const THREE_CYCLE_EDGES: [(usize, usize); 8] = [
    (4, 5),
    (1, 4),
    (1, 2),
    (1, 3),
    (2, 5),
    (3, 5),
    (0, 5),
    (0, 2),
];

/// The one-cycle graph with π on a single edge of its cycle.
pub const ONE_CYCLE_FLUX_PI_FILE: &str = "\
# one cycle, flux pi
6 6
0 4
4 5
1 2
1 3
2 4 3.141592653589793
3 4
";

pub fn one_cycle() -> Graph {
    Graph::from_edge_list(6, &ONE_CYCLE_EDGES).unwrap()
}

pub fn three_cycle() -> Graph {
    Graph::from_edge_list(6, &THREE_CYCLE_EDGES).unwrap()
}

pub fn graph_file(g: &Graph) -> String {
    maglap_core::io::write_graph_file(g, None).unwrap()
}
