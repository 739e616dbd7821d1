//! 4/3-approximation of the dissociation number of bipartite graphs.
//!
//! Take a maximum matching `M` and return a maximum independent set of
//! `G − M`. Every independent set of `G − M` is a dissociation set of `G`,
//! and for bipartite `G` its size is at least `3/4 · diss(G)`.

use crate::graph::{bipartition, Graph, GraphError, Vertex};
use crate::matching::{maximum_independent_set_bipartite, maximum_matching, Matching};

/// The matching the answer was derived from, so the same pair can be handed
/// to [`crate::extremal::recognize_extremal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxCertificate {
    pub matching: Matching,
    /// `α(G − M)`, which equals the size of the returned set.
    pub alpha_without_matching: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub set: Vec<Vertex>,
    pub certificate: ApproxCertificate,
}

pub fn approx_dissociation_bipartite(g: &Graph) -> Result<ApproxResult, GraphError> {
    let b = bipartition(g)?;
    let matching = maximum_matching(g, &b)?;
    let rest = g.remove_edges(matching.edges())?;
    let set = maximum_independent_set_bipartite(&rest)?;
    Ok(ApproxResult {
        certificate: ApproxCertificate {
            alpha_without_matching: set.len(),
            matching,
        },
        set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dissociation_number_exact, is_dissociation_set, Cutoffs};

    #[test]
    fn examples() {
        let c6 = Graph::cycle(6);
        let r = approx_dissociation_bipartite(&c6).unwrap();
        assert_eq!(r.set.len(), 3);
        assert!(is_dissociation_set(&c6, &r.set));
        assert_eq!(r.certificate.matching.len(), 3);

        let three_k2 = Graph::perfect_matching(3);
        let r = approx_dissociation_bipartite(&three_k2).unwrap();
        assert_eq!(r.set, vec![0, 1, 2, 3, 4, 5]);

        let k23 = Graph::complete_bipartite(2, 3);
        let r = approx_dissociation_bipartite(&k23).unwrap();
        let diss = dissociation_number_exact(&k23, &Cutoffs::default()).unwrap().0;
        assert_eq!(diss, 3);
        assert_eq!(r.set.len(), 3);
    }

    #[test]
    fn rejects_odd_cycle() {
        assert!(matches!(
            approx_dissociation_bipartite(&Graph::cycle(5)),
            Err(GraphError::NotBipartite { .. })
        ));
    }
}
