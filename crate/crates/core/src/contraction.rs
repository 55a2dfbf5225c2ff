//! Contraction criterion for MILL1 proof structures.
//!
//! A proof structure is abstracted to a graph whose vertices only remember
//! the free eigenvariables of their formulas. Three contractions shrink it:
//!
//! - `c`: a solid edge between distinct vertices;
//! - `p`: a par link whose two dotted edges end at the same vertex, distinct
//!   from its main vertex;
//! - `u`: a universal link between distinct vertices whose eigenvariable
//!   occurs nowhere but at the link's source vertex. The eigenvariable is
//!   dropped from the merged vertex.
//!
//! The structure is a proof net iff the graph contracts to a single vertex.
//! The contractions are confluent, so contraction order does not matter.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::structure::{Link, NodeId, ProofStructure};

pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Free eigenvariables.
    pub vars: BTreeSet<u32>,
    /// Unresolved meta-variables; only relevant while the substitution can
    /// still grow.
    pub metas: BTreeSet<u32>,
    /// Proof-structure nodes merged into this vertex.
    pub members: BTreeSet<NodeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParLink {
    pub main: VertexId,
    pub left: VertexId,
    pub right: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnivLink {
    pub target: VertexId,
    pub source: VertexId,
    pub eigen: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Redex {
    C(usize),
    P(usize),
    U(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    C,
    P,
    U,
}

/// One performed contraction: `from` was merged into `into`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub kind: StepKind,
    pub into: VertexId,
    pub from: VertexId,
    pub eigen: Option<u32>,
}

impl Step {
    pub fn trace_line(&self, k: usize) -> String {
        let kind = match self.kind {
            StepKind::C => 'c',
            StepKind::P => 'p',
            StepKind::U => 'u',
        };
        match self.eigen {
            Some(e) => format!("STEP {k} CONTRACT {kind} v{} v{} x=!{e}", self.into, self.from),
            None => format!("STEP {k} CONTRACT {kind} v{} v{}", self.into, self.from),
        }
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("contraction not applicable")]
pub struct Inapplicable;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("proof structure still has {0} open atom(s)")]
pub struct OpenAtoms(pub usize);

/// Why a partial configuration can never contract to a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Doom {
    /// A link with both ends (or a dotted branch and its main vertex) at the
    /// same vertex.
    SelfLoop(VertexId),
    /// A directed cycle of dotted edges from premises to conclusions.
    DottedCycle(Vec<VertexId>),
    /// A connected component with no unlinked atoms that is not the whole
    /// graph.
    Isolated(VertexId),
}

impl fmt::Display for Doom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Doom::SelfLoop(v) => write!(f, "self-loop at v{v}"),
            Doom::DottedCycle(vs) => {
                f.write_str("dotted cycle")?;
                for v in vs {
                    write!(f, " v{v}")?;
                }
                Ok(())
            }
            Doom::Isolated(v) => write!(f, "isolated component at v{v}"),
        }
    }
}

/// A link left over in an irreducible graph, with the reason it cannot be
/// contracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Blocked {
    SolidLoop { at: VertexId },
    ParSplit { main: VertexId, left: VertexId, right: VertexId },
    ParLoop { main: VertexId, left: VertexId, right: VertexId },
    UnivLoop { at: VertexId, eigen: u32 },
    UnivOccurs { target: VertexId, source: VertexId, eigen: u32, also_at: Vec<VertexId> },
    UnivPending { target: VertexId, source: VertexId, eigen: u32 },
}

impl fmt::Display for Blocked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Blocked::SolidLoop { at } => write!(f, "BLOCKED c v{at} v{at}: self-loop"),
            Blocked::ParSplit { main, left, right } => {
                write!(f, "BLOCKED p v{main} v{left} v{right}: branches end at different vertices")
            }
            Blocked::ParLoop { main, left, right } => {
                write!(f, "BLOCKED p v{main} v{left} v{right}: branch ends at the main vertex")
            }
            Blocked::UnivLoop { at, eigen } => write!(f, "BLOCKED u v{at} v{at} x=!{eigen}: self-loop"),
            Blocked::UnivOccurs { target, source, eigen, also_at } => {
                write!(f, "BLOCKED u v{target} v{source} x=!{eigen}: !{eigen} also occurs at")?;
                for v in also_at {
                    write!(f, " v{v}")?;
                }
                Ok(())
            }
            Blocked::UnivPending { target, source, eigen } => {
                write!(f, "BLOCKED u v{target} v{source} x=!{eigen}: unresolved meta-variables elsewhere")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    owner: BTreeMap<NodeId, VertexId>,
    solid: Vec<(VertexId, VertexId)>,
    pars: Vec<ParLink>,
    univs: Vec<UnivLink>,
    eliminated: BTreeSet<u32>,
    frozen: bool,
}

impl ContractionGraph {
    /// A graph built by hand: vertex `i` gets the eigenvariable set `vars[i]`.
    /// The graph is treated as final (no pending substitution).
    pub fn from_parts(
        vars: Vec<BTreeSet<u32>>,
        solid: Vec<(VertexId, VertexId)>,
        pars: Vec<ParLink>,
        univs: Vec<UnivLink>,
    ) -> Self {
        let vertices: BTreeMap<VertexId, Vertex> = vars
            .into_iter()
            .enumerate()
            .map(|(i, vars)| (i, Vertex { vars, metas: BTreeSet::new(), members: [i].into() }))
            .collect();
        let owner = vertices.keys().map(|&v| (v, v)).collect();
        ContractionGraph { vertices, owner, solid, pars, univs, eliminated: BTreeSet::new(), frozen: true }
    }

    /// Forget the formulas of a complete proof structure, keeping one vertex
    /// per occurrence labelled with its free eigenvariables.
    pub fn abstract_structure(ps: &ProofStructure) -> Result<Self, OpenAtoms> {
        if !ps.is_complete() {
            return Err(OpenAtoms(ps.open_atoms().len()));
        }
        let mut g = Self::abstract_partial(ps);
        g.frozen = true;
        Ok(g)
    }

    /// Like [`abstract_structure`](Self::abstract_structure) but for a
    /// structure that may still have open atoms. The `u` contraction is then
    /// only applied when no later unification can spread its eigenvariable.
    pub fn abstract_partial(ps: &ProofStructure) -> Self {
        let mut vertices = BTreeMap::new();
        let mut owner = BTreeMap::new();
        for n in 0..ps.nodes().len() {
            let f = ps.formula(n);
            vertices.insert(n, Vertex { vars: f.free_eigens(), metas: f.metas(), members: [n].into() });
            owner.insert(n, n);
        }
        let mut g = ContractionGraph {
            vertices,
            owner,
            solid: Vec::new(),
            pars: Vec::new(),
            univs: Vec::new(),
            eliminated: BTreeSet::new(),
            frozen: false,
        };
        for l in ps.links() {
            g.add_link(l);
        }
        g
    }

    fn add_link(&mut self, l: &Link) {
        match *l {
            Link::SolidBinary { parent, left, right } => {
                self.solid.push((parent, left));
                self.solid.push((parent, right));
            }
            Link::SolidUnary { parent, child } => self.solid.push((parent, child)),
            Link::Axiom { neg, pos } | Link::Cut { neg, pos } => self.solid.push((neg, pos)),
            Link::ParBinary { parent, left, right } => self.pars.push(ParLink { main: parent, left, right }),
            Link::UniversalUnary { parent, child, eigen } => self.univs.push(UnivLink { target: parent, source: child, eigen }),
        }
    }

    /// Add a solid edge between the vertices currently holding two
    /// proof-structure nodes.
    pub fn add_solid_between(&mut self, a: NodeId, b: NodeId) {
        let (va, vb) = (self.owner[&a], self.owner[&b]);
        self.solid.push((va, vb));
    }

    /// Recompute vertex labels from the structure's current substitution.
    pub fn refresh(&mut self, ps: &ProofStructure) {
        for v in self.vertices.values_mut() {
            v.vars.clear();
            v.metas.clear();
            for &n in &v.members {
                let f = ps.formula(n);
                v.vars.extend(f.free_eigens().into_iter().filter(|e| !self.eliminated.contains(e)));
                v.metas.extend(f.metas());
            }
        }
    }

    pub fn set_frozen(&mut self, frozen: bool) {
        self.frozen = frozen;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn link_count(&self) -> usize {
        self.solid.len() + self.pars.len() + self.univs.len()
    }

    pub fn vertices(&self) -> &BTreeMap<VertexId, Vertex> {
        &self.vertices
    }

    pub fn vertex_of(&self, n: NodeId) -> VertexId {
        self.owner[&n]
    }

    pub fn solid_edges(&self) -> &[(VertexId, VertexId)] {
        &self.solid
    }

    pub fn par_links(&self) -> &[ParLink] {
        &self.pars
    }

    pub fn univ_links(&self) -> &[UnivLink] {
        &self.univs
    }

    /// One vertex and nothing left to contract.
    pub fn is_single_point(&self) -> bool {
        self.vertices.len() == 1 && self.link_count() == 0
    }

    fn u_applicable(&self, l: &UnivLink) -> bool {
        if l.target == l.source {
            return false;
        }
        self.vertices.iter().all(|(&id, v)| id == l.source || (!v.vars.contains(&l.eigen) && (self.frozen || v.metas.is_empty())))
    }

    /// All currently applicable contractions, `c` first, then `p`, then `u`.
    pub fn redexes(&self) -> Vec<Redex> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.solid.iter().enumerate() {
            if a != b {
                out.push(Redex::C(i));
            }
        }
        for (i, p) in self.pars.iter().enumerate() {
            if p.left == p.right && p.left != p.main {
                out.push(Redex::P(i));
            }
        }
        for (i, u) in self.univs.iter().enumerate() {
            if self.u_applicable(u) {
                out.push(Redex::U(i));
            }
        }
        out
    }

    pub fn apply(&mut self, r: Redex) -> Result<Step, Inapplicable> {
        match r {
            Redex::C(i) => self.contract_c(i),
            Redex::P(i) => self.contract_p(i),
            Redex::U(i) => self.contract_u(i),
        }
    }

    pub fn contract_c(&mut self, edge: usize) -> Result<Step, Inapplicable> {
        let &(a, b) = self.solid.get(edge).ok_or(Inapplicable)?;
        if a == b {
            return Err(Inapplicable);
        }
        self.solid.swap_remove(edge);
        Ok(self.merge(a, b, StepKind::C, None))
    }

    pub fn contract_p(&mut self, par: usize) -> Result<Step, Inapplicable> {
        let p = *self.pars.get(par).ok_or(Inapplicable)?;
        if p.left != p.right || p.left == p.main {
            return Err(Inapplicable);
        }
        self.pars.swap_remove(par);
        Ok(self.merge(p.main, p.left, StepKind::P, None))
    }

    pub fn contract_u(&mut self, univ: usize) -> Result<Step, Inapplicable> {
        let u = *self.univs.get(univ).ok_or(Inapplicable)?;
        if !self.u_applicable(&u) {
            return Err(Inapplicable);
        }
        self.univs.swap_remove(univ);
        self.eliminated.insert(u.eigen);
        Ok(self.merge(u.target, u.source, StepKind::U, Some(u.eigen)))
    }

    fn merge(&mut self, a: VertexId, b: VertexId, kind: StepKind, drop: Option<u32>) -> Step {
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        let old = self.vertices.remove(&gone).expect("merged vertex exists");
        for &n in &old.members {
            self.owner.insert(n, keep);
        }
        let v = self.vertices.get_mut(&keep).expect("surviving vertex exists");
        v.vars.extend(old.vars);
        v.metas.extend(old.metas);
        v.members.extend(old.members);
        if let Some(e) = drop {
            v.vars.remove(&e);
        }
        let re = |x: &mut VertexId| {
            if *x == gone {
                *x = keep;
            }
        };
        for (x, y) in &mut self.solid {
            re(x);
            re(y);
        }
        for p in &mut self.pars {
            re(&mut p.main);
            re(&mut p.left);
            re(&mut p.right);
        }
        for u in &mut self.univs {
            re(&mut u.target);
            re(&mut u.source);
        }
        let (into, from) = match kind {
            StepKind::C => (keep, gone),
            StepKind::P | StepKind::U => (a, b),
        };
        let into = if into == gone { keep } else { into };
        let from = if from == keep && into == keep { gone } else { from };
        Step { kind, into, from, eigen: drop }
    }

    /// Contract until no redex is left; the steps are returned in order.
    pub fn contract_fully(&mut self) -> Vec<Step> {
        let mut steps = Vec::new();
        while let Some(&r) = self.redexes().first() {
            steps.push(self.apply(r).expect("listed redex applies"));
        }
        steps
    }

    /// Reasons every remaining link cannot be contracted.
    pub fn blocked(&self) -> Vec<Blocked> {
        let mut out = Vec::new();
        for &(a, b) in &self.solid {
            if a == b {
                out.push(Blocked::SolidLoop { at: a });
            }
        }
        for p in &self.pars {
            if p.left == p.main || p.right == p.main {
                out.push(Blocked::ParLoop { main: p.main, left: p.left, right: p.right });
            } else if p.left != p.right {
                out.push(Blocked::ParSplit { main: p.main, left: p.left, right: p.right });
            }
        }
        for u in &self.univs {
            if u.target == u.source {
                out.push(Blocked::UnivLoop { at: u.target, eigen: u.eigen });
                continue;
            }
            let also_at: Vec<VertexId> = self
                .vertices
                .iter()
                .filter(|(&id, v)| id != u.source && v.vars.contains(&u.eigen))
                .map(|(&id, _)| id)
                .collect();
            if !also_at.is_empty() {
                out.push(Blocked::UnivOccurs { target: u.target, source: u.source, eigen: u.eigen, also_at });
            } else if !self.u_applicable(u) {
                out.push(Blocked::UnivPending { target: u.target, source: u.source, eigen: u.eigen });
            }
        }
        out
    }

    /// Detect configurations that can never contract to a single vertex, no
    /// matter which axiom links are added later. `open` lists the atoms not
    /// yet linked.
    pub fn doomed(&self, open: &BTreeSet<NodeId>) -> Option<Doom> {
        for &(a, b) in &self.solid {
            if a == b {
                return Some(Doom::SelfLoop(a));
            }
        }
        for p in &self.pars {
            if p.left == p.main || p.right == p.main {
                return Some(Doom::SelfLoop(p.main));
            }
        }
        for u in &self.univs {
            if u.target == u.source {
                return Some(Doom::SelfLoop(u.target));
            }
        }
        if let Some(cycle) = self.dotted_cycle() {
            return Some(Doom::DottedCycle(cycle));
        }
        if self.vertices.len() > 1 {
            let comps = self.components();
            if comps.len() > 1 {
                for comp in comps {
                    let has_open = comp.iter().any(|v| self.vertices[v].members.iter().any(|n| open.contains(n)));
                    if !has_open {
                        return Some(Doom::Isolated(comp[0]));
                    }
                }
            }
        }
        None
    }

    /// A directed cycle through dotted edges (premise vertex to conclusion
    /// vertex), if any.
    fn dotted_cycle(&self) -> Option<Vec<VertexId>> {
        let mut succ: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for p in &self.pars {
            succ.entry(p.left).or_default().push(p.main);
            succ.entry(p.right).or_default().push(p.main);
        }
        for u in &self.univs {
            succ.entry(u.source).or_default().push(u.target);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: BTreeMap<VertexId, u8> = BTreeMap::new();
        let mut path = Vec::new();
        fn dfs(
            v: VertexId,
            succ: &BTreeMap<VertexId, Vec<VertexId>>,
            state: &mut BTreeMap<VertexId, u8>,
            path: &mut Vec<VertexId>,
        ) -> Option<Vec<VertexId>> {
            state.insert(v, 1);
            path.push(v);
            for &w in succ.get(&v).into_iter().flatten() {
                match state.get(&w).copied().unwrap_or(0) {
                    1 => {
                        let start = path.iter().position(|&x| x == w).unwrap_or(0);
                        return Some(path[start..].to_vec());
                    }
                    0 => {
                        if let Some(c) = dfs(w, succ, state, path) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            path.pop();
            state.insert(v, 2);
            None
        }
        for &v in succ.keys() {
            if state.get(&v).copied().unwrap_or(0) == 0 {
                if let Some(c) = dfs(v, &succ, &mut state, &mut path) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Connected components over all links, each sorted, in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let ids: Vec<VertexId> = self.vertices.keys().copied().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut join = |a: VertexId, b: VertexId| {
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for &(a, b) in &self.solid {
            join(a, b);
        }
        for p in &self.pars {
            join(p.main, p.left);
            join(p.main, p.right);
        }
        for u in &self.univs {
            join(u.target, u.source);
        }
        let mut comps: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (i, &v) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            comps.entry(r).or_default().push(v);
        }
        comps.into_values().collect()
    }

    /// Order-independent description: vertices as member sets with their
    /// labels, and the remaining links over those member sets.
    pub fn canonical(&self) -> String {
        let name = |v: &VertexId| format!("{:?}", self.vertices[v].members);
        let mut vs: Vec<String> = self.vertices.values().map(|v| format!("{:?}:{:?}", v.members, v.vars)).collect();
        vs.sort();
        let mut links: Vec<String> = Vec::new();
        for (a, b) in &self.solid {
            let (x, y) = (name(a), name(b));
            links.push(format!("c {} {}", x.clone().min(y.clone()), x.max(y)));
        }
        for p in &self.pars {
            let (x, y) = (name(&p.left), name(&p.right));
            links.push(format!("p {} {} {}", name(&p.main), x.clone().min(y.clone()), x.max(y)));
        }
        for u in &self.univs {
            links.push(format!("u {} {} {}", name(&u.target), name(&u.source), u.eigen));
        }
        links.sort();
        format!("{}\n{}", vs.join("\n"), links.join("\n"))
    }

    /// Vertex and link listing used by traces.
    pub fn describe(&self) -> Vec<String> {
        let mut out = vec![format!("FINAL vertices={} links={}", self.vertex_count(), self.link_count())];
        for (id, v) in &self.vertices {
            let vars: Vec<String> = v.vars.iter().map(|e| format!("!{e}")).collect();
            out.push(format!("VERTEX v{id} {{{}}}", vars.join(",")));
        }
        out.extend(self.blocked().iter().map(|b| b.to_string()));
        out
    }
}

/// Contract the abstraction of a complete structure; true iff a single
/// vertex remains.
pub fn is_proof_net(ps: &ProofStructure) -> bool {
    match ContractionGraph::abstract_structure(ps) {
        Ok(mut g) => {
            g.contract_fully();
            g.is_single_point()
        }
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    fn noproof() -> ProofStructure {
        let ps = ProofStructure::unfold(&parse_sequent("(forall x. a(x)) -o b |- exists y. (a(y) -o b)").unwrap());
        ps.add_axiom_link(6, 2).unwrap().add_axiom_link(3, 7).unwrap()
    }

    #[test]
    fn noproof_abstraction_before_linking() {
        let g = ContractionGraph::abstract_structure(&noproof()).unwrap();
        // Occurrences: 0 (∀x.a(x))⊸b, 1 ∀x.a(x), 2 a(x)+, 3 b-, 4 ∃y.., 5 a(x)⊸b, 6 a(x)-, 7 b+.
        let labels: Vec<usize> = g.vertices().values().map(|v| v.vars.len()).collect();
        assert_eq!(labels, [0, 0, 1, 0, 0, 1, 1, 0]);
        assert_eq!(g.univ_links().len(), 1);
        assert_eq!(g.par_links().len(), 1);
        assert_eq!(g.solid_edges().len(), 5);
    }

    #[test]
    fn noproof_contracts_to_three_vertices() {
        let mut g = ContractionGraph::abstract_structure(&noproof()).unwrap();
        let steps = g.contract_fully();
        assert!(steps.iter().all(|s| s.kind == StepKind::C));
        assert_eq!(g.vertex_count(), 3);
        let blocked = g.blocked();
        assert_eq!(blocked.len(), 2);
        assert!(matches!(blocked[0], Blocked::ParSplit { .. }));
        let Blocked::UnivOccurs { source, also_at, .. } = &blocked[1] else { panic!("{blocked:?}") };
        let par = g.par_links()[0];
        // the eigenvariable sits at the par link's main vertex
        assert_eq!(also_at, &vec![par.main]);
        assert_eq!(*source, par.left);
        assert!(!is_proof_net(&noproof()));
    }

    #[test]
    fn p_and_u_inapplicable_on_irreducible_noproof_graph() {
        let mut g = ContractionGraph::abstract_structure(&noproof()).unwrap();
        g.contract_fully();
        assert_eq!(g.clone().contract_p(0), Err(Inapplicable));
        assert_eq!(g.clone().contract_u(0), Err(Inapplicable));
    }

    #[test]
    fn single_solid_edge() {
        let mut g = ContractionGraph::from_parts(vec![set(&[]), set(&[])], vec![(0, 1)], vec![], vec![]);
        let s = g.contract_c(0).unwrap();
        assert_eq!((s.into, s.from), (0, 1));
        assert!(g.is_single_point());
        let mut one = ContractionGraph::from_parts(vec![set(&[])], vec![], vec![], vec![]);
        assert!(one.contract_fully().is_empty());
        assert!(one.is_single_point());
    }

    #[test]
    fn identity_and_verb_are_nets() {
        let ps = ProofStructure::unfold(&parse_sequent("a |- a").unwrap()).add_axiom_link(0, 1).unwrap();
        let g = ContractionGraph::abstract_structure(&ps).unwrap();
        assert_eq!((g.vertex_count(), g.link_count()), (2, 1));
        assert!(is_proof_net(&ps));

        let ps = ProofStructure::unfold(&parse_sequent("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)").unwrap());
        // nodes: 0 np(0,1)-, 1 ∀, 2 ⊸, 3 np(?0,1)+, 4 s(?0,2)-, 5 s(0,2)+
        let ps = ps.add_axiom_link(0, 3).unwrap().add_axiom_link(4, 5).unwrap();
        let mut g = ContractionGraph::abstract_structure(&ps).unwrap();
        assert!(g.par_links().is_empty() && g.univ_links().is_empty());
        assert!(g.vertices().values().all(|v| v.vars.is_empty()));
        g.contract_fully();
        assert!(g.is_single_point());
    }

    #[test]
    fn u_contraction_drops_eigenvariable() {
        let mut g = ContractionGraph::from_parts(
            vec![set(&[]), set(&[7])],
            vec![],
            vec![],
            vec![UnivLink { target: 0, source: 1, eigen: 7 }],
        );
        let s = g.contract_u(0).unwrap();
        assert_eq!(s.eigen, Some(7));
        assert!(g.vertices()[&0].vars.is_empty());
        assert!(g.is_single_point());
    }

    #[test]
    fn u_blocked_when_variable_occurs_at_target() {
        let mut g = ContractionGraph::from_parts(
            vec![set(&[7]), set(&[7])],
            vec![],
            vec![],
            vec![UnivLink { target: 0, source: 1, eigen: 7 }],
        );
        assert_eq!(g.contract_u(0), Err(Inapplicable));
    }

    #[test]
    fn doomed_par_back_to_main() {
        // main 0, branches 1 and 2 where 1 is already merged with 0
        let mut g = ContractionGraph::from_parts(
            vec![set(&[]), set(&[]), set(&[])],
            vec![(0, 1)],
            vec![ParLink { main: 0, left: 1, right: 2 }],
            vec![],
        );
        g.contract_fully();
        assert_eq!(g.doomed(&[2].into()), Some(Doom::SelfLoop(0)));
    }

    #[test]
    fn doomed_isolated_component() {
        let g = ContractionGraph::from_parts(vec![set(&[]), set(&[]), set(&[])], vec![(0, 1)], vec![], vec![]);
        assert_eq!(g.doomed(&[2].into()), Some(Doom::Isolated(0)));
        let single = ContractionGraph::from_parts(vec![set(&[])], vec![], vec![], vec![]);
        assert_eq!(single.doomed(&BTreeSet::new()), None);
    }

    #[test]
    fn doomed_directed_dotted_cycle() {
        // two par links pointing at each other's branches
        let g = ContractionGraph::from_parts(
            vec![set(&[]), set(&[]), set(&[]), set(&[])],
            vec![],
            vec![ParLink { main: 0, left: 1, right: 2 }, ParLink { main: 1, left: 0, right: 3 }],
            vec![],
        );
        assert!(matches!(g.doomed(&[2, 3].into()), Some(Doom::DottedCycle(_))));
    }

    #[test]
    fn cut_structure_is_a_net() {
        let ps = ProofStructure::unfold(&parse_sequent("a |- a").unwrap()).add_cut(&crate::syntax::parse_mill1("a").unwrap());
        // 0 a- (antecedent), 1 a+ (goal), 2 a- (cut), 3 a+ (cut)
        let ps = ps.add_axiom_link(0, 3).unwrap().add_axiom_link(2, 1).unwrap();
        assert!(is_proof_net(&ps));
    }
}
