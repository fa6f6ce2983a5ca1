//! Small non-type-A inputs shared by tests and the command line.

use std::sync::Arc;

use crate::algebra::{PathAlgebra, Subalgebra};
use crate::error::Result;
use crate::linalg::Element;
use crate::maxsub::{build_split, SplitSpec};
use crate::quiver::Quiver;

/// `1 -> 2 => 3 -> 4` with arrows `alpha`, `beta1`, `beta2`, `gamma`.
pub fn doubled_arrow_quiver() -> Quiver {
    Quiver::from_labels(
        ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect(),
        vec![("alpha", "1", "2"), ("beta1", "2", "3"), ("beta2", "2", "3"), ("gamma", "3", "4")],
    )
    .expect("valid quiver")
}

/// The split subalgebra of the doubled-arrow path algebra keeping `k beta1`
/// between vertices 2 and 3.
pub fn doubled_arrow_split() -> Result<(Arc<PathAlgebra>, SplitSpec, Subalgebra)> {
    let q = doubled_arrow_quiver();
    let beta1 = q.arrow_by_name("beta1").expect("beta1").id;
    let b = Arc::new(PathAlgebra::new(q)?);
    let spec = SplitSpec {
        u: 1,
        v: 2,
        subspace: vec![Element::basis(b.arrow_index(beta1))],
    };
    let a = build_split(&b, &spec)?;
    Ok((b, spec, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxsub::{check_maximality, layer_identities, present_split_hereditary};

    #[test]
    fn doubled_arrow_split_keeps_one_arrow() {
        let (b, spec, a) = doubled_arrow_split().unwrap();
        assert_eq!((b.dim(), a.dim()), (14, 13));
        assert_eq!(a.ext_quiver().multiplicity(1, 2), 1);
        assert!(check_maximality(&a).holds());
        assert!(layer_identities(&a).unwrap().iter().all(|l| l.holds()));
        let p = present_split_hereditary(&b, &spec).unwrap();
        p.verify(&a).unwrap();
        let names: Vec<&str> = p.quiver().arrows().iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, ["alpha", "beta1", "gamma", "bar(alpha)", "under(gamma)"]);
        assert_eq!(p.relations().len(), 1);
    }
}
