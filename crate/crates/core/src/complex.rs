//! Chromatic pure simplicial models.
//!
//! A model stores its facets only; every other simplex is a face of some
//! facet. Facets are kept in colour order: `facet(f)[a]` is the vertex of
//! colour `a`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::agents::{AgentId, AgentMask, AgentSet};
use crate::error::{Error, Result};

pub type VertexIdx = usize;
pub type FacetIdx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub agent: AgentId,
    pub atoms: BTreeSet<String>,
}

/// A nonempty chromatic set of vertices, stored as sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexIdx>);

impl Simplex {
    pub fn new(mut vertices: Vec<VertexIdx>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[VertexIdx] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension is one less than the number of vertices.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: VertexIdx) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }
}

// ---------------------------------------------------------------------------
// On-disk form and validation

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVertex {
    pub id: String,
    pub agent: String,
    #[serde(default)]
    pub atoms: Vec<String>,
}

/// The JSON shape of a simplicial model.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSimplicialModel {
    pub agents: Vec<String>,
    pub vertices: Vec<RawVertex>,
    pub facets: Vec<Vec<String>>,
}

impl RawSimplicialModel {
    pub fn new<S: Into<String>>(agents: impl IntoIterator<Item = S>) -> Self {
        RawSimplicialModel {
            agents: agents.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, id: &str, agent: &str, atoms: &[&str]) -> &mut Self {
        self.vertices.push(RawVertex {
            id: id.to_string(),
            agent: agent.to_string(),
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn facet(&mut self, ids: &[&str]) -> &mut Self {
        self.facets.push(ids.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn build(&self) -> Result<SimplicialModel> {
        SimplicialModel::from_raw(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyAgentSet,
    TooManyAgents(usize),
    DuplicateAgent(String),
    DuplicateVertex(String),
    VertexUnknownAgent { vertex: String, agent: String },
    AtomNotLocal { vertex: String, atom: String },
    FacetUnknownVertex { facet: usize, vertex: String },
    NotChromatic { facet: usize, agent: String },
    NotPure { facet: usize, size: usize, expected: usize },
    MissingColour { facet: usize, agent: String },
    DuplicateFacet { facet: usize, first: usize },
    DanglingVertex(String),
    NoFacets,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyAgentSet => write!(f, "agent set is empty"),
            Violation::TooManyAgents(n) => write!(f, "{n} agents exceed the limit of 64"),
            Violation::DuplicateAgent(a) => write!(f, "agent `{a}` declared twice"),
            Violation::DuplicateVertex(v) => write!(f, "vertex `{v}` declared twice"),
            Violation::VertexUnknownAgent { vertex, agent } => {
                write!(f, "vertex `{vertex}` has undeclared agent `{agent}`")
            }
            Violation::AtomNotLocal { vertex, atom } => {
                write!(f, "atom `{atom}` at vertex `{vertex}` is not owned by its agent")
            }
            Violation::FacetUnknownVertex { facet, vertex } => {
                write!(f, "facet F{facet} names unknown vertex `{vertex}`")
            }
            Violation::NotChromatic { facet, agent } => {
                write!(f, "facet F{facet} has two vertices of colour `{agent}`")
            }
            Violation::NotPure { facet, size, expected } => {
                write!(f, "facet F{facet} has {size} vertices, expected {expected}")
            }
            Violation::MissingColour { facet, agent } => {
                write!(f, "facet F{facet} has no vertex of colour `{agent}`")
            }
            Violation::DuplicateFacet { facet, first } => {
                write!(f, "facet F{facet} repeats F{first}")
            }
            Violation::DanglingVertex(v) => write!(f, "vertex `{v}` lies in no facet"),
            Violation::NoFacets => write!(f, "model has no facets"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn single(v: Violation) -> Self {
        ValidationReport { violations: vec![v] }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Check a raw model for chromaticity, purity, colour coverage and dangling vertices.
pub fn validate(raw: &RawSimplicialModel) -> ValidationReport {
    let mut out = Vec::new();
    if raw.agents.is_empty() {
        out.push(Violation::EmptyAgentSet);
    }
    if raw.agents.len() > crate::agents::MAX_AGENTS {
        out.push(Violation::TooManyAgents(raw.agents.len()));
    }
    let mut agent_index = HashMap::new();
    for (i, a) in raw.agents.iter().enumerate() {
        if agent_index.insert(a.as_str(), i).is_some() {
            out.push(Violation::DuplicateAgent(a.clone()));
        }
    }
    let agents = AgentSet::new(raw.agents.iter().cloned()).ok();

    let mut vertex_agent: HashMap<&str, Option<usize>> = HashMap::new();
    for v in &raw.vertices {
        let agent = agent_index.get(v.agent.as_str()).copied();
        if agent.is_none() {
            out.push(Violation::VertexUnknownAgent {
                vertex: v.id.clone(),
                agent: v.agent.clone(),
            });
        }
        if vertex_agent.insert(v.id.as_str(), agent).is_some() {
            out.push(Violation::DuplicateVertex(v.id.clone()));
        }
        if let (Some(ags), Some(a)) = (&agents, agent) {
            for atom in &v.atoms {
                if ags.owner_of(atom) != Some(a) {
                    out.push(Violation::AtomNotLocal {
                        vertex: v.id.clone(),
                        atom: atom.clone(),
                    });
                }
            }
        }
    }

    if raw.facets.is_empty() {
        out.push(Violation::NoFacets);
    }
    let n = raw.agents.len();
    let mut used: BTreeSet<&str> = BTreeSet::new();
    let mut seen: HashMap<Vec<&str>, usize> = HashMap::new();
    for (fi, facet) in raw.facets.iter().enumerate() {
        let mut colours = vec![0usize; n];
        for vid in facet {
            used.insert(vid.as_str());
            match vertex_agent.get(vid.as_str()) {
                None => out.push(Violation::FacetUnknownVertex {
                    facet: fi,
                    vertex: vid.clone(),
                }),
                Some(Some(a)) => colours[*a] += 1,
                Some(None) => {}
            }
        }
        for (a, &c) in colours.iter().enumerate() {
            if c > 1 {
                out.push(Violation::NotChromatic {
                    facet: fi,
                    agent: raw.agents[a].clone(),
                });
            }
        }
        if facet.len() != n {
            out.push(Violation::NotPure {
                facet: fi,
                size: facet.len(),
                expected: n,
            });
        }
        for (a, &c) in colours.iter().enumerate() {
            if c == 0 {
                out.push(Violation::MissingColour {
                    facet: fi,
                    agent: raw.agents[a].clone(),
                });
            }
        }
        let mut key: Vec<&str> = facet.iter().map(|s| s.as_str()).collect();
        key.sort_unstable();
        if let Some(&first) = seen.get(&key) {
            out.push(Violation::DuplicateFacet { facet: fi, first });
        } else {
            seen.insert(key, fi);
        }
    }
    for v in &raw.vertices {
        if !used.contains(v.id.as_str()) {
            out.push(Violation::DanglingVertex(v.id.clone()));
        }
    }
    ValidationReport { violations: out }
}

// ---------------------------------------------------------------------------
// The model

#[derive(Clone)]
pub struct SimplicialModel {
    agents: AgentSet,
    vertices: Vec<Vertex>,
    vertex_index: HashMap<String, VertexIdx>,
    facets: Vec<Vec<VertexIdx>>,
    facet_index: HashMap<Vec<VertexIdx>, FacetIdx>,
    stars: Vec<Vec<FacetIdx>>,
}

impl fmt::Debug for SimplicialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialModel")
            .field("agents", &self.agents)
            .field("vertices", &self.vertices.len())
            .field("facets", &self.facets.len())
            .finish()
    }
}

impl PartialEq for SimplicialModel {
    fn eq(&self, other: &Self) -> bool {
        self.to_raw() == other.to_raw()
    }
}

impl SimplicialModel {
    pub fn from_raw(raw: &RawSimplicialModel) -> Result<Self> {
        let report = validate(raw);
        if !report.is_valid() {
            return Err(Error::InvalidModel(report));
        }
        let agents = AgentSet::new(raw.agents.iter().cloned())?;
        let mut vertices = Vec::with_capacity(raw.vertices.len());
        let mut vertex_index = HashMap::with_capacity(raw.vertices.len());
        for v in &raw.vertices {
            vertex_index.insert(v.id.clone(), vertices.len());
            vertices.push(Vertex {
                id: v.id.clone(),
                agent: agents.require(&v.agent)?,
                atoms: v.atoms.iter().cloned().collect(),
            });
        }
        let facets = raw
            .facets
            .iter()
            .map(|fc| {
                let mut row = vec![0; agents.len()];
                for vid in fc {
                    let v = vertex_index[vid];
                    row[vertices[v].agent] = v;
                }
                row
            })
            .collect();
        Ok(Self::assemble(agents, vertices, vertex_index, facets))
    }

    fn assemble(
        agents: AgentSet,
        vertices: Vec<Vertex>,
        vertex_index: HashMap<String, VertexIdx>,
        facets: Vec<Vec<VertexIdx>>,
    ) -> Self {
        let mut stars = vec![Vec::new(); vertices.len()];
        let mut facet_index = HashMap::with_capacity(facets.len());
        for (f, row) in facets.iter().enumerate() {
            for &v in row {
                stars[v].push(f);
            }
            facet_index.insert(row.clone(), f);
        }
        SimplicialModel {
            agents,
            vertices,
            vertex_index,
            facets,
            facet_index,
            stars,
        }
    }

    /// Serialize in file order.
    pub fn to_raw(&self) -> RawSimplicialModel {
        RawSimplicialModel {
            agents: self.agents.names().to_vec(),
            vertices: self
                .vertices
                .iter()
                .map(|v| RawVertex {
                    id: v.id.clone(),
                    agent: self.agents.name(v.agent).to_string(),
                    atoms: v.atoms.iter().cloned().collect(),
                })
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|row| row.iter().map(|&v| self.vertices[v].id.clone()).collect())
                .collect(),
        }
    }

    /// Serialize with vertices and facets in lexicographic id order.
    pub fn to_raw_canonical(&self) -> RawSimplicialModel {
        let mut raw = self.to_raw();
        raw.vertices.sort_by(|x, y| x.id.cmp(&y.id));
        for f in &mut raw.facets {
            f.sort();
        }
        raw.facets.sort();
        raw
    }

    /// Same model with facets renumbered in canonical order.
    pub fn canonical(&self) -> SimplicialModel {
        SimplicialModel::from_raw(&self.to_raw_canonical()).expect("canonical form of a valid model")
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    /// Dimension n = |A| - 1.
    pub fn dim(&self) -> usize {
        self.agents.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexIdx) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<VertexIdx> {
        self.vertex_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<VertexIdx> {
        self.vertex_by_id(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Vec<VertexIdx>] {
        &self.facets
    }

    /// Vertices of facet `f`, indexed by colour.
    pub fn facet(&self, f: FacetIdx) -> &[VertexIdx] {
        &self.facets[f]
    }

    pub fn facet_simplex(&self, f: FacetIdx) -> Simplex {
        Simplex::new(self.facets[f].clone())
    }

    /// The facet whose vertex set equals `s`, if any.
    pub fn facet_of(&self, s: &Simplex) -> Option<FacetIdx> {
        if s.len() != self.agents.len() {
            return None;
        }
        let mut row = vec![usize::MAX; self.agents.len()];
        for &v in s.vertices() {
            row[self.vertices[v].agent] = v;
        }
        self.facet_index.get(&row).copied()
    }

    /// Facets containing vertex `v`.
    pub fn vertex_star(&self, v: VertexIdx) -> &[FacetIdx] {
        &self.stars[v]
    }

    /// ℓ(X): all atoms true at some vertex of facet `f`.
    pub fn facet_atoms(&self, f: FacetIdx) -> BTreeSet<String> {
        self.facets[f]
            .iter()
            .flat_map(|&v| self.vertices[v].atoms.iter().cloned())
            .collect()
    }

    /// All atoms occurring in the model.
    pub fn atoms(&self) -> BTreeSet<String> {
        self.vertices.iter().flat_map(|v| v.atoms.iter().cloned()).collect()
    }

    pub fn colours(&self, s: &Simplex) -> AgentMask {
        s.vertices()
            .iter()
            .fold(0, |m, &v| m | 1 << self.vertices[v].agent)
    }

    pub fn vertex_of_colour(&self, s: &Simplex, a: AgentId) -> Option<VertexIdx> {
        s.vertices().iter().copied().find(|&v| self.vertices[v].agent == a)
    }

    /// Build a simplex from vertex ids; checks existence and chromaticity.
    pub fn simplex<S: AsRef<str>>(&self, ids: &[S]) -> Result<Simplex> {
        let mut vs = Vec::with_capacity(ids.len());
        let mut seen: AgentMask = 0;
        for id in ids {
            let v = self.require_vertex(id.as_ref())?;
            let bit = 1 << self.vertices[v].agent;
            if seen & bit != 0 {
                return Err(Error::FaceNotInComplex(ids_display(ids)));
            }
            seen |= bit;
            vs.push(v);
        }
        if vs.is_empty() {
            return Err(Error::FaceNotInComplex("{}".into()));
        }
        Ok(Simplex::new(vs))
    }

    /// Resolve a point reference: `F<i>` or a bare index names a facet,
    /// otherwise a comma-separated list of vertex ids.
    pub fn resolve(&self, text: &str) -> Result<Simplex> {
        let t = text.trim();
        if self.vertex_by_id(t).is_none() {
            let digits = t.strip_prefix('F').unwrap_or(t);
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let f: usize = digits.parse().map_err(|_| Error::UnknownFacet(t.to_string()))?;
                if f >= self.facets.len() {
                    return Err(Error::UnknownFacet(t.to_string()));
                }
                return Ok(self.facet_simplex(f));
            }
        }
        let ids: Vec<&str> = t.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let s = self.simplex(&ids)?;
        self.star(&s)?;
        Ok(s)
    }

    /// Resolve a reference that must name a facet.
    pub fn resolve_facet(&self, text: &str) -> Result<FacetIdx> {
        let s = self.resolve(text)?;
        self.facet_of(&s).ok_or_else(|| Error::UnknownFacet(text.to_string()))
    }

    pub fn display_simplex(&self, s: &Simplex) -> String {
        let mut ids: Vec<&str> = s.vertices().iter().map(|&v| self.vertices[v].id.as_str()).collect();
        ids.sort_unstable();
        format!("{{{}}}", ids.join(","))
    }

    pub fn facet_name(&self, f: FacetIdx) -> String {
        format!("F{f}")
    }

    pub fn is_simplex(&self, s: &Simplex) -> bool {
        !s.is_empty() && self.star(s).is_ok()
    }

    /// Facets containing `s`.
    pub fn star(&self, s: &Simplex) -> Result<Vec<FacetIdx>> {
        let first = match s.vertices().first() {
            Some(&v) if v < self.vertices.len() => v,
            _ => return Err(Error::FaceNotInComplex(self.display_simplex_lossy(s))),
        };
        let out: Vec<FacetIdx> = self.stars[first]
            .iter()
            .copied()
            .filter(|&f| {
                s.vertices().iter().all(|&v| {
                    v < self.vertices.len() && self.facets[f][self.vertices[v].agent] == v
                })
            })
            .collect();
        if out.is_empty() {
            Err(Error::FaceNotInComplex(self.display_simplex_lossy(s)))
        } else {
            Ok(out)
        }
    }

    fn display_simplex_lossy(&self, s: &Simplex) -> String {
        if s.vertices().iter().all(|&v| v < self.vertices.len()) {
            self.display_simplex(s)
        } else {
            format!("{:?}", s.vertices())
        }
    }

    /// All simplices of dimension at most `m`.
    pub fn skeleton(&self, m: usize) -> Result<Vec<Simplex>> {
        if m > self.dim() {
            return Err(Error::DimensionOutOfRange { dim: m, max: self.dim() });
        }
        let mut out = BTreeSet::new();
        for row in &self.facets {
            for s in faces_of(row) {
                if s.len() <= m + 1 {
                    out.insert(s);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Every simplex of the complex.
    pub fn all_simplices(&self) -> Vec<Simplex> {
        self.skeleton(self.dim()).expect("dimension in range")
    }

    /// Number of simplices of each dimension 0..=n.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; self.agents.len()];
        for s in self.all_simplices() {
            counts[s.len() - 1] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Ridges ((n−1)-simplices) with the facets containing them.
    fn ridges(&self) -> BTreeMap<Simplex, Vec<FacetIdx>> {
        let mut out: BTreeMap<Simplex, Vec<FacetIdx>> = BTreeMap::new();
        if self.agents.len() < 2 {
            return out;
        }
        for (f, row) in self.facets.iter().enumerate() {
            for skip in 0..row.len() {
                let ridge: Vec<VertexIdx> = row
                    .iter()
                    .enumerate()
                    .filter(|&(a, _)| a != skip)
                    .map(|(_, &v)| v)
                    .collect();
                out.entry(Simplex::new(ridge)).or_default().push(f);
            }
        }
        out
    }

    pub fn is_manifold(&self) -> ManifoldCheck {
        if self.agents.len() == 1 {
            return if self.facets.len() <= 2 {
                ManifoldCheck::Yes
            } else {
                ManifoldCheck::No(ManifoldWitness::Branching {
                    simplex: None,
                    facets: (0..self.facets.len()).collect(),
                })
            };
        }
        let ridges = self.ridges();
        for (r, fs) in &ridges {
            if fs.len() > 2 {
                return ManifoldCheck::No(ManifoldWitness::Branching {
                    simplex: Some(r.clone()),
                    facets: fs.clone(),
                });
            }
        }
        let mut uf = UnionFind::new(self.facets.len());
        for fs in ridges.values() {
            if fs.len() == 2 {
                uf.union(fs[0], fs[1]);
            }
        }
        let root = uf.find(0);
        for f in 1..self.facets.len() {
            if uf.find(f) != root {
                return ManifoldCheck::No(ManifoldWitness::Disconnected(0, f));
            }
        }
        ManifoldCheck::Yes
    }

    /// (n−1)-simplices contained in exactly one facet.
    pub fn boundary(&self) -> Vec<Simplex> {
        self.ridges()
            .into_iter()
            .filter(|(_, fs)| fs.len() == 1)
            .map(|(r, _)| r)
            .collect()
    }

    /// Connected components of the facet graph in which facets sharing a vertex are adjacent.
    pub fn vertex_components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.facets.len());
        for star in &self.stars {
            for w in star.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_components().iter().all(|&c| c == 0)
    }

    /// Keep only the vertices coloured by `names`; facets are projected and deduplicated.
    pub fn restrict_to_agents<S: AsRef<str>>(&self, names: &[S]) -> Result<SimplicialModel> {
        if names.is_empty() {
            return Err(Error::EmptyAgentSet);
        }
        let keep = self.agents.mask_of(names)?;
        let kept: Vec<AgentId> = self.agents.ids().filter(|&a| keep >> a & 1 == 1).collect();
        let agents = AgentSet::new(kept.iter().map(|&a| self.agents.name(a).to_string()))?;
        let mut new_index: HashMap<VertexIdx, VertexIdx> = HashMap::new();
        let mut vertices = Vec::new();
        let mut vertex_index = HashMap::new();
        let mut facets = Vec::new();
        let mut seen = BTreeSet::new();
        for row in &self.facets {
            let proj: Vec<VertexIdx> = kept.iter().map(|&a| row[a]).collect();
            if !seen.insert(proj.clone()) {
                continue;
            }
            let mapped = proj
                .iter()
                .map(|&v| {
                    *new_index.entry(v).or_insert_with(|| {
                        let old = &self.vertices[v];
                        vertex_index.insert(old.id.clone(), vertices.len());
                        vertices.push(Vertex {
                            id: old.id.clone(),
                            agent: agents.get(self.agents.name(old.agent)).expect("kept agent"),
                            atoms: old.atoms.clone(),
                        });
                        vertices.len() - 1
                    })
                })
                .collect();
            facets.push(mapped);
        }
        Ok(Self::assemble(agents, vertices, vertex_index, facets))
    }

    /// Map a simplex of this model to the same vertex ids in `other`.
    pub fn transfer(&self, s: &Simplex, other: &SimplicialModel) -> Result<Simplex> {
        let ids: Vec<&str> = s.vertices().iter().map(|&v| self.vertices[v].id.as_str()).collect();
        other.simplex(&ids)
    }

    /// Disjoint union; vertex ids are prefixed with `left`/`right`.
    pub fn disjoint_union(&self, other: &SimplicialModel, left: &str, right: &str) -> Result<SimplicialModel> {
        if !self.agents.same_members(&other.agents) {
            return Err(Error::AgentSetMismatch(
                self.agents.names().to_vec(),
                other.agents.names().to_vec(),
            ));
        }
        let mut raw = RawSimplicialModel::new(self.agents.names().iter().cloned());
        for (m, p) in [(self, left), (other, right)] {
            let r = m.to_raw();
            for v in r.vertices {
                raw.vertices.push(RawVertex { id: format!("{p}{}", v.id), ..v });
            }
            for f in r.facets {
                raw.facets.push(f.into_iter().map(|v| format!("{p}{v}")).collect());
            }
        }
        raw.build()
    }
}

fn ids_display<S: AsRef<str>>(ids: &[S]) -> String {
    let v: Vec<&str> = ids.iter().map(|s| s.as_ref()).collect();
    format!("{{{}}}", v.join(","))
}

/// All nonempty subsets of a vertex list.
fn faces_of(vs: &[VertexIdx]) -> Vec<Simplex> {
    let n = vs.len();
    (1u64..1 << n)
        .map(|bits| Simplex::new((0..n).filter(|i| bits >> i & 1 == 1).map(|i| vs[i]).collect()))
        .collect()
}

/// All nonempty faces of `s`.
pub fn faces(s: &Simplex) -> Vec<Simplex> {
    faces_of(s.vertices())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldCheck {
    Yes,
    No(ManifoldWitness),
}

impl ManifoldCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, ManifoldCheck::Yes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldWitness {
    /// A ridge lying in more than two facets.
    Branching { simplex: Option<Simplex>, facets: Vec<FacetIdx> },
    /// Two facets with no ridge-connected path between them.
    Disconnected(FacetIdx, FacetIdx),
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Component labels numbered by first occurrence.
    pub fn labels(&mut self) -> Vec<usize> {
        let mut ids = HashMap::new();
        (0..self.parent.len())
            .map(|x| {
                let r = self.find(x);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }
}
