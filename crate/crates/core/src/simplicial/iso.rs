use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;

use super::SimplicialComplex;

impl SimplicialComplex {
    /// Simplicial isomorphism test.
    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        self.is_isomorphic_colored(
            other,
            &vec![0; self.vertex_count()],
            &vec![0; other.vertex_count()],
        )
    }

    /// Isomorphism test that must send each vertex to one of the same colour.
    pub fn is_isomorphic_colored(
        &self,
        other: &SimplicialComplex,
        colors: &[u64],
        other_colors: &[u64],
    ) -> bool {
        if self.f_vector() != other.f_vector() || self.facets().len() != other.facets().len() {
            return false;
        }
        let mut a = colors.to_vec();
        let mut b = other_colors.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
        let ga = incidence_graph(self, colors);
        let gb = incidence_graph(other, other_colors);
        is_isomorphic_matching(&ga, &gb, |x, y| x == y, |_, _| true)
    }
}

/// Bipartite vertex/facet incidence graph; vertex nodes carry even weights,
/// facet nodes odd ones.
fn incidence_graph(k: &SimplicialComplex, colors: &[u64]) -> UnGraph<u64, ()> {
    let mut g = UnGraph::with_capacity(k.vertex_count() + k.facets().len(), 0);
    let vs: Vec<_> = (0..k.vertex_count()).map(|v| g.add_node(2 * colors[v])).collect();
    for f in k.facets() {
        let node = g.add_node(2 * f.len() as u64 + 1);
        for &v in f {
            g.add_edge(vs[v], node, ());
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_cycles_are_isomorphic() {
        let a = SimplicialComplex::cycle(5, "a").unwrap();
        let b = SimplicialComplex::from_labeled(&[
            vec!["p", "r"],
            vec!["r", "t"],
            vec!["t", "q"],
            vec!["q", "s"],
            vec!["s", "p"],
        ])
        .unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&SimplicialComplex::cycle(6, "a").unwrap()));
    }

    #[test]
    fn same_f_vector_different_complex() {
        // two triangles sharing a vertex vs. two disjoint-ish configuration
        let bowtie = SimplicialComplex::from_labeled(&[vec!["a", "b", "c"], vec!["a", "d", "e"]])
            .unwrap();
        let strip = SimplicialComplex::from_labeled(&[
            vec!["a", "b", "c"],
            vec!["c", "d", "e"],
        ])
        .unwrap();
        assert!(bowtie.is_isomorphic(&strip));
        let glued = SimplicialComplex::from_labeled(&[
            vec!["a", "b", "c"],
            vec!["b", "c", "d"],
            vec!["e"],
        ])
        .unwrap();
        assert!(!bowtie.is_isomorphic(&glued));
    }

    #[test]
    fn colours_restrict_maps() {
        let a = SimplicialComplex::simplex(&["x", "y"]).unwrap();
        assert!(a.is_isomorphic_colored(&a, &[1, 2], &[2, 1]));
        assert!(!a.is_isomorphic_colored(&a, &[1, 1], &[1, 2]));
    }
}
