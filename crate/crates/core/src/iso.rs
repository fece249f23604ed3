//! Isomorphism search for "partition structures": a finite set of points,
//! each carrying a label, with one partition per agent whose blocks also
//! carry labels. Kripke models are such structures directly; a simplicial
//! model is one over its facets, with the block of facet X for agent a
//! being the vertex X_a.

use std::collections::{BTreeMap, HashMap};

pub(crate) struct Structure {
    pub point_label: Vec<u64>,
    /// `block[a][p]` = block id of point p for agent a.
    pub block: Vec<Vec<usize>>,
    /// `block_label[a][b]` = label of block b of agent a.
    pub block_label: Vec<Vec<u64>>,
}

impl Structure {
    fn len(&self) -> usize {
        self.point_label.len()
    }

    fn members(&self) -> Vec<Vec<Vec<usize>>> {
        self.block
            .iter()
            .zip(&self.block_label)
            .map(|(bs, labels)| {
                let mut m = vec![Vec::new(); labels.len()];
                for (p, &b) in bs.iter().enumerate() {
                    m[b].push(p);
                }
                m
            })
            .collect()
    }
}

/// Stable colouring of the disjoint union by iterated multiset refinement.
fn refine(x: &Structure, y: &Structure) -> (Vec<usize>, Vec<usize>) {
    let agents = x.block.len();
    let (mx, my) = (x.members(), y.members());
    let mut interner: HashMap<Vec<u64>, usize> = HashMap::new();
    let intern = |key: Vec<u64>, interner: &mut HashMap<Vec<u64>, usize>| {
        let next = interner.len();
        *interner.entry(key).or_insert(next)
    };
    let initial = |s: &Structure, m: &Vec<Vec<Vec<usize>>>, p: usize, interner: &mut HashMap<Vec<u64>, usize>| {
        let mut key = vec![s.point_label[p]];
        for a in 0..agents {
            let b = s.block[a][p];
            key.push(s.block_label[a][b]);
            key.push(m[a][b].len() as u64);
        }
        intern(key, interner)
    };
    let mut cx: Vec<usize> = (0..x.len()).map(|p| initial(x, &mx, p, &mut interner)).collect();
    let mut cy: Vec<usize> = (0..y.len()).map(|p| initial(y, &my, p, &mut interner)).collect();
    let count = |c: &[usize], d: &[usize]| {
        let mut all: Vec<usize> = c.iter().chain(d).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut classes = count(&cx, &cy);
    loop {
        let mut interner: HashMap<Vec<u64>, usize> = HashMap::new();
        let step = |s: &Structure, m: &Vec<Vec<Vec<usize>>>, c: &[usize], interner: &mut HashMap<Vec<u64>, usize>| {
            (0..s.len())
                .map(|p| {
                    let mut key = vec![c[p] as u64];
                    for a in 0..agents {
                        let mut ms: Vec<u64> = m[a][s.block[a][p]].iter().map(|&q| c[q] as u64).collect();
                        ms.sort_unstable();
                        key.push(u64::MAX);
                        key.extend(ms);
                    }
                    intern(key, interner)
                })
                .collect::<Vec<usize>>()
        };
        let nx = step(x, &mx, &cx, &mut interner);
        let ny = step(y, &my, &cy, &mut interner);
        let next = count(&nx, &ny);
        cx = nx;
        cy = ny;
        if next == classes {
            break;
        }
        classes = next;
    }
    (cx, cy)
}

/// A point bijection x → y preserving labels and every partition, if one exists.
pub(crate) fn find(x: &Structure, y: &Structure) -> Option<Vec<usize>> {
    if x.len() != y.len() || x.block.len() != y.block.len() {
        return None;
    }
    let agents = x.block.len();
    for a in 0..agents {
        if x.block_label[a].len() != y.block_label[a].len() {
            return None;
        }
    }
    let (cx, cy) = refine(x, y);
    let histogram = |c: &[usize]| {
        let mut h = BTreeMap::new();
        for &k in c {
            *h.entry(k).or_insert(0usize) += 1;
        }
        h
    };
    if histogram(&cx) != histogram(&cy) {
        return None;
    }
    let mx = x.members();
    let mut by_colour: HashMap<usize, Vec<usize>> = HashMap::new();
    for (q, &c) in cy.iter().enumerate() {
        by_colour.entry(c).or_default().push(q);
    }

    // visit order: breadth first along shared blocks so choices propagate
    let mut order = Vec::with_capacity(x.len());
    let mut seen = vec![false; x.len()];
    for start in 0..x.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            order.push(p);
            for a in 0..agents {
                for &q in &mx[a][x.block[a][p]] {
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
    }

    let mut st = Search {
        x,
        y,
        cx: &cx,
        by_colour: &by_colour,
        order: &order,
        point: vec![usize::MAX; x.len()],
        used: vec![false; y.len()],
        fwd: x.block_label.iter().map(|l| vec![usize::MAX; l.len()]).collect(),
        bwd: y.block_label.iter().map(|l| vec![usize::MAX; l.len()]).collect(),
        fwd_count: x.block_label.iter().map(|l| vec![0; l.len()]).collect(),
    };
    if st.go(0) {
        Some(st.point)
    } else {
        None
    }
}

struct Search<'a> {
    x: &'a Structure,
    y: &'a Structure,
    cx: &'a [usize],
    by_colour: &'a HashMap<usize, Vec<usize>>,
    order: &'a [usize],
    point: Vec<usize>,
    used: Vec<bool>,
    fwd: Vec<Vec<usize>>,
    bwd: Vec<Vec<usize>>,
    fwd_count: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn go(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let agents = self.x.block.len();
        let candidates = &self.by_colour[&self.cx[p]];
        for &q in candidates {
            if self.used[q] {
                continue;
            }
            let ok = (0..agents).all(|a| {
                let (bp, bq) = (self.x.block[a][p], self.y.block[a][q]);
                match self.fwd[a][bp] {
                    usize::MAX => self.bwd[a][bq] == usize::MAX,
                    img => img == bq,
                }
            });
            if !ok {
                continue;
            }
            self.used[q] = true;
            self.point[p] = q;
            for a in 0..agents {
                let (bp, bq) = (self.x.block[a][p], self.y.block[a][q]);
                self.fwd[a][bp] = bq;
                self.bwd[a][bq] = bp;
                self.fwd_count[a][bp] += 1;
            }
            if self.go(depth + 1) {
                return true;
            }
            for a in 0..agents {
                let (bp, bq) = (self.x.block[a][p], self.y.block[a][q]);
                self.fwd_count[a][bp] -= 1;
                if self.fwd_count[a][bp] == 0 {
                    self.fwd[a][bp] = usize::MAX;
                    self.bwd[a][bq] = usize::MAX;
                }
            }
            self.used[q] = false;
            self.point[p] = usize::MAX;
        }
        false
    }
}

/// Interns arbitrary hashable keys as dense u64 labels shared between two structures.
#[derive(Default)]
pub(crate) struct Labels<K: std::hash::Hash + Eq> {
    map: HashMap<K, u64>,
}

impl<K: std::hash::Hash + Eq> Labels<K> {
    pub fn get(&mut self, k: K) -> u64 {
        let next = self.map.len() as u64;
        *self.map.entry(k).or_insert(next)
    }
}
