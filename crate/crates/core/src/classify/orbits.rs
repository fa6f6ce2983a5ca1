//! Orbits of `Aut(Q)` on representative tags.

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::maxsub::{type_a_structure, RepTag, Representative};
use crate::quiver::{aut_group, Quiver, TypeALabels, VertexMap};

/// A union recorded while building the partition: `sigma` carries `from`'s
/// index set to `to`'s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMerge {
    pub from: RepTag,
    pub to: RepTag,
    pub sigma: VertexMap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<RepTag>>,
    pub merges: Vec<OrbitMerge>,
}

impl OrbitPartition {
    pub fn block_of(&self, tag: RepTag) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&tag))
    }

    pub fn same_orbit(&self, a: RepTag, b: RepTag) -> bool {
        self.block_of(a).is_some() && self.block_of(a) == self.block_of(b)
    }
}

/// Image of a tag under a quiver automorphism. Separable tags map as
/// unordered vertex pairs, split tags as the edge they remove.
pub fn act(labels: &TypeALabels, sigma: &VertexMap, tag: RepTag) -> Result<RepTag> {
    let image = |l: i32| -> Result<i32> { Ok(labels.label(sigma.apply(labels.index(l)?))) };
    match tag {
        RepTag::Separable { i, j } => {
            let (x, y) = (image(i)?, image(j)?);
            Ok(RepTag::Separable { i: x.min(y), j: x.max(y) })
        }
        RepTag::Split { i } => {
            let (x, y) = (image(i)?, image(labels.succ(i)?)?);
            if labels.succ(x).ok() == Some(y) {
                Ok(RepTag::Split { i: x })
            } else if labels.succ(y).ok() == Some(x) {
                Ok(RepTag::Split { i: y })
            } else {
                Err(Error::NotTypeA("automorphism does not preserve edges".into()))
            }
        }
    }
}

/// Orbit partition of `tags` under `Aut(Q)`. Blocks are listed in order of
/// their first member and keep the input order inside.
pub fn orbits(q: &Quiver, tags: &[RepTag]) -> Result<OrbitPartition> {
    if tags.is_empty() {
        return Ok(OrbitPartition::default());
    }
    let labels = type_a_structure(q)?;
    let group = aut_group(q);
    let mut parent: Vec<usize> = (0..tags.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut merges = Vec::new();
    for (k, &t) in tags.iter().enumerate() {
        for sigma in group.iter().filter(|s| !s.is_identity()) {
            let image = act(&labels, sigma, t)?;
            let Some(l) = tags.iter().position(|&u| u == image) else {
                continue;
            };
            let (a, b) = (find(&mut parent, k), find(&mut parent, l));
            if a != b {
                parent[a.max(b)] = a.min(b);
                merges.push(OrbitMerge {
                    from: t,
                    to: image,
                    sigma: sigma.clone(),
                });
            }
        }
    }
    let mut blocks: Vec<(usize, Vec<RepTag>)> = Vec::new();
    for (k, &t) in tags.iter().enumerate() {
        let r = find(&mut parent, k);
        match blocks.iter_mut().find(|(root, _)| *root == r) {
            Some((_, b)) => b.push(t),
            None => blocks.push((r, vec![t])),
        }
    }
    Ok(OrbitPartition {
        blocks: blocks.into_iter().map(|(_, b)| b).collect(),
        merges,
    })
}

/// Image of a representative's subspace under the automorphism of `B`
/// induced by `sigma`.
pub fn transport(rep: &Representative, sigma: &VertexMap) -> Result<Subspace> {
    let b = rep.algebra.ambient();
    let perm = b
        .path_permutation(sigma)
        .ok_or_else(|| Error::NotTypeA("automorphism without arrow map".into()))?;
    let moved: Vec<_> = rep.algebra.basis().map(|x| x.remap(|i| Some(perm[i]))).collect();
    Ok(Subspace::spanned_by(b.dim(), &moved))
}
