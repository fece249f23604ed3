//! Coarsest stable partitions, used for every bisimulation computation.
//!
//! A [`Frame`] is a set of points with a label each and a family of
//! equivalence relations given as block ids. Simplicial models become frames
//! over facets (blocks are vertices), Kripke models frames over states.

use std::collections::{BTreeSet, HashMap};

use crate::agents::AgentSet;
use crate::complex::SimplicialModel;
use crate::error::{Error, Result};
use crate::kripke::KripkeModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub labels: Vec<u64>,
    /// `blocks[r][p]`: block of point p under relation r.
    pub blocks: Vec<Vec<usize>>,
}

/// Interns arbitrary label values so that frames built separately agree.
#[derive(Debug, Default)]
pub struct LabelTable(HashMap<BTreeSet<String>, u64>);

impl LabelTable {
    pub fn id(&mut self, atoms: &BTreeSet<String>) -> u64 {
        let next = self.0.len() as u64;
        *self.0.entry(atoms.clone()).or_insert(next)
    }
}

/// Agent indices of `other` listed in the order of `base`.
pub fn aligned(base: &AgentSet, other: &AgentSet) -> Result<Vec<usize>> {
    if !base.same_members(other) {
        return Err(Error::AgentSetMismatch(base.names().to_vec(), other.names().to_vec()));
    }
    Ok(base.names().iter().map(|n| other.get(n).expect("same members")).collect())
}

impl Frame {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Facets labelled by ℓ(X), one relation per agent in `order`.
    pub fn of_simplicial(m: &SimplicialModel, order: &[usize], table: &mut LabelTable) -> Frame {
        Frame {
            labels: (0..m.num_facets()).map(|f| table.id(&m.facet_atoms(f))).collect(),
            blocks: order
                .iter()
                .map(|&a| (0..m.num_facets()).map(|f| m.facet(f)[a]).collect())
                .collect(),
        }
    }

    pub fn of_kripke(m: &KripkeModel, order: &[usize], table: &mut LabelTable) -> Frame {
        Frame {
            labels: m.states().iter().map(|s| table.id(&s.atoms)).collect(),
            blocks: order.iter().map(|&a| m.block_ids(a).to_vec()).collect(),
        }
    }

    /// One relation for each nonempty coalition, relating points equivalent for all its members.
    pub fn of_kripke_groups(m: &KripkeModel, order: &[usize], table: &mut LabelTable) -> Frame {
        let n = order.len();
        let blocks = (1u64..1 << n)
            .map(|sub| {
                let mask = (0..n).filter(|i| sub >> i & 1 == 1).fold(0, |acc, i| acc | 1 << order[i]);
                m.intersection_labels(mask)
            })
            .collect();
        Frame {
            labels: m.states().iter().map(|s| table.id(&s.atoms)).collect(),
            blocks,
        }
    }

    /// Members of each block per relation.
    pub fn members(&self) -> Vec<HashMap<usize, Vec<usize>>> {
        self.blocks
            .iter()
            .map(|row| {
                let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
                for (p, &b) in row.iter().enumerate() {
                    m.entry(b).or_default().push(p);
                }
                m
            })
            .collect()
    }

    /// Disjoint union; block ids of `other` are shifted past those of `self`.
    pub fn union(&self, other: &Frame) -> Frame {
        assert_eq!(self.blocks.len(), other.blocks.len(), "frames over the same relations");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| {
                let shift = x.iter().max().map_or(0, |m| m + 1);
                x.iter().copied().chain(y.iter().map(|b| b + shift)).collect()
            })
            .collect();
        Frame {
            labels: self.labels.iter().chain(&other.labels).copied().collect(),
            blocks,
        }
    }
}

/// The coarsest partition refining the labels that is stable under every
/// relation. Classes are numbered by first occurrence.
pub fn coarsest(frame: &Frame) -> Vec<usize> {
    let n = frame.len();
    let mut class = number(frame.labels.iter().map(|&l| vec![l as usize]));
    let mut count = class.iter().max().map_or(0, |m| m + 1);
    let members = frame.members();
    loop {
        let mut sets: HashMap<Vec<usize>, usize> = HashMap::new();
        let block_sets: Vec<HashMap<usize, usize>> = members
            .iter()
            .map(|blocks| {
                blocks
                    .iter()
                    .map(|(&b, ps)| {
                        let mut cs: Vec<usize> = ps.iter().map(|&p| class[p]).collect();
                        cs.sort_unstable();
                        cs.dedup();
                        let next = sets.len();
                        (b, *sets.entry(cs).or_insert(next))
                    })
                    .collect()
            })
            .collect();
        let next = number((0..n).map(|p| {
            let mut key = Vec::with_capacity(1 + frame.blocks.len());
            key.push(class[p]);
            key.extend(frame.blocks.iter().zip(&block_sets).map(|(row, bs)| bs[&row[p]]));
            key
        }));
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        class = next;
        if next_count == count {
            return class;
        }
        count = next_count;
    }
}

fn number(keys: impl Iterator<Item = Vec<usize>>) -> Vec<usize> {
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_uniform_points_collapses() {
        // p0 - p1 - p2 - p3 alternating relations, all labels equal
        let frame = Frame {
            labels: vec![0; 4],
            blocks: vec![vec![0, 0, 1, 1], vec![0, 1, 1, 2]],
        };
        assert_eq!(coarsest(&frame), vec![0, 0, 0, 0]);
    }

    #[test]
    fn labels_propagate() {
        // a chain where only the last point differs splits every point apart
        let frame = Frame {
            labels: vec![0, 0, 0, 1],
            blocks: vec![vec![0, 0, 1, 1], vec![0, 1, 1, 2]],
        };
        let c = coarsest(&frame);
        let distinct: BTreeSet<usize> = c.iter().copied().collect();
        assert_eq!(distinct.len(), 4);
    }
}
