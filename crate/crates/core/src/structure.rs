//! Proof structures: the polarized unfolding of a sequent by the logical
//! links, plus axiom and cut links.
//!
//! | occurrence      | link            | children            |
//! |-----------------|-----------------|---------------------|
//! | `(A -o B)-`     | solid binary    | `A+`, `B-`          |
//! | `(A * B)+`      | solid binary    | `A+`, `B+`          |
//! | `(A -o B)+`     | par             | `A-`, `B+`          |
//! | `(A * B)-`      | par             | `A-`, `B-`          |
//! | `(forall x.A)-` | solid unary     | `A[x:=?m]-`         |
//! | `(exists x.A)+` | solid unary     | `A[x:=?m]+`         |
//! | `(forall x.A)+` | universal (x)   | `A[x:=!e]+`         |
//! | `(exists x.A)-` | universal (x)   | `A[x:=!e]-`         |

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{format_mill1, Atom, Formula, Polarity, Sequent};
use crate::term::{Term, VarSupply};
use crate::unify::{unify_atoms, Substitution, UnifyError};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// The occurrence's formula with quantifiers instantiated by meta or
    /// eigenvariables; the structure's substitution is not applied.
    pub formula: Formula,
    pub polarity: Polarity,
    pub parent: Option<NodeId>,
    /// Index of the sequent formula this node belongs to (antecedents first,
    /// then the succedent, then cut formulas).
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Link {
    Axiom { neg: NodeId, pos: NodeId },
    Cut { neg: NodeId, pos: NodeId },
    SolidBinary { parent: NodeId, left: NodeId, right: NodeId },
    ParBinary { parent: NodeId, left: NodeId, right: NodeId },
    SolidUnary { parent: NodeId, child: NodeId },
    UniversalUnary { parent: NodeId, child: NodeId, eigen: u32 },
}

impl Link {
    fn sort_key(&self) -> (NodeId, NodeId) {
        match *self {
            Link::Axiom { neg, pos } | Link::Cut { neg, pos } => (neg.min(pos), neg.max(pos)),
            Link::SolidBinary { parent, left, .. } | Link::ParBinary { parent, left, .. } => (parent, left),
            Link::SolidUnary { parent, child } | Link::UniversalUnary { parent, child, .. } => (parent, child),
        }
    }

    pub fn dump_line(&self) -> String {
        match *self {
            Link::Axiom { neg, pos } => format!("LINK axiom {neg} {pos}"),
            Link::Cut { neg, pos } => format!("LINK cut {neg} {pos}"),
            Link::SolidBinary { parent, left, right } => format!("LINK solid-binary {parent} {left} {right}"),
            Link::ParBinary { parent, left, right } => format!("LINK par {parent} {left} {right}"),
            Link::SolidUnary { parent, child } => format!("LINK solid-unary {parent} {child}"),
            Link::UniversalUnary { parent, child, eigen } => format!("LINK universal {parent} {child} eigen=!{eigen}"),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("node {0} is not an open atom")]
    NotOpen(NodeId),
    #[error("nodes {0} and {1} do not have opposite polarities")]
    Polarity(NodeId, NodeId),
    #[error("cannot unify: {0}")]
    Unify(#[from] UnifyError),
}

#[derive(Clone, Debug)]
pub struct ProofStructure {
    nodes: Vec<Node>,
    links: Vec<Link>,
    /// For each node, the index of the logical link it is the parent of.
    parent_link: Vec<Option<usize>>,
    roots: Vec<NodeId>,
    open: BTreeSet<NodeId>,
    subst: Substitution,
    supply: VarSupply,
    antecedent_count: usize,
}

impl ProofStructure {
    /// Decompose every formula of the sequent down to its atoms.
    pub fn unfold(seq: &Sequent) -> ProofStructure {
        let mut ps = ProofStructure {
            nodes: Vec::new(),
            links: Vec::new(),
            parent_link: Vec::new(),
            roots: Vec::new(),
            open: BTreeSet::new(),
            subst: Substitution::new(),
            supply: VarSupply::new(),
            antecedent_count: seq.antecedents.len(),
        };
        for (i, (f, pol)) in seq.polarized().enumerate() {
            let root = ps.unfold_formula(f.clone(), pol, None, i);
            ps.roots.push(root);
        }
        ps
    }

    fn unfold_formula(&mut self, formula: Formula, polarity: Polarity, parent: Option<NodeId>, root: usize) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node { formula: formula.clone(), polarity, parent, root });
        self.parent_link.push(None);
        let link = match (&formula, polarity) {
            (Formula::Atom(_), _) => {
                self.open.insert(id);
                return id;
            }
            (Formula::Lolli(a, b), Polarity::Neg) => {
                let left = self.unfold_formula((**a).clone(), Polarity::Pos, Some(id), root);
                let right = self.unfold_formula((**b).clone(), Polarity::Neg, Some(id), root);
                Link::SolidBinary { parent: id, left, right }
            }
            (Formula::Tensor(a, b), Polarity::Pos) => {
                let left = self.unfold_formula((**a).clone(), Polarity::Pos, Some(id), root);
                let right = self.unfold_formula((**b).clone(), Polarity::Pos, Some(id), root);
                Link::SolidBinary { parent: id, left, right }
            }
            (Formula::Lolli(a, b), Polarity::Pos) => {
                let left = self.unfold_formula((**a).clone(), Polarity::Neg, Some(id), root);
                let right = self.unfold_formula((**b).clone(), Polarity::Pos, Some(id), root);
                Link::ParBinary { parent: id, left, right }
            }
            (Formula::Tensor(a, b), Polarity::Neg) => {
                let left = self.unfold_formula((**a).clone(), Polarity::Neg, Some(id), root);
                let right = self.unfold_formula((**b).clone(), Polarity::Neg, Some(id), root);
                Link::ParBinary { parent: id, left, right }
            }
            (Formula::Forall(v, body), Polarity::Neg) | (Formula::Exists(v, body), Polarity::Pos) => {
                let m = self.supply.meta();
                let child = self.unfold_formula(body.instantiate(*v, &Term::meta(m)), polarity, Some(id), root);
                Link::SolidUnary { parent: id, child }
            }
            (Formula::Forall(v, body), Polarity::Pos) | (Formula::Exists(v, body), Polarity::Neg) => {
                let e = self.supply.eigen();
                let child = self.unfold_formula(body.instantiate(*v, &Term::eigen(e)), polarity, Some(id), root);
                Link::UniversalUnary { parent: id, child, eigen: e }
            }
        };
        self.parent_link[id] = Some(self.links.len());
        self.links.push(link);
        id
    }

    /// Add a cut on `f`: `f` is unfolded once negatively and once positively
    /// and the two roots are joined by a cut link.
    pub fn add_cut(&self, f: &Formula) -> ProofStructure {
        let mut ps = self.clone();
        let root = ps.roots.len();
        let neg = ps.unfold_formula(f.clone(), Polarity::Neg, None, root);
        ps.roots.push(neg);
        let pos = ps.unfold_formula(f.clone(), Polarity::Pos, None, root + 1);
        ps.roots.push(pos);
        ps.links.push(Link::Cut { neg, pos });
        ps
    }

    pub fn add_axiom_link(&self, neg: NodeId, pos: NodeId) -> Result<ProofStructure, LinkError> {
        for n in [neg, pos] {
            if !self.open.contains(&n) {
                return Err(LinkError::NotOpen(n));
            }
        }
        if self.nodes[neg].polarity != Polarity::Neg || self.nodes[pos].polarity != Polarity::Pos {
            return Err(LinkError::Polarity(neg, pos));
        }
        let subst = unify_atoms(self.raw_atom(neg), self.raw_atom(pos), &self.subst)?;
        let mut ps = self.clone();
        ps.subst = subst;
        ps.open.remove(&neg);
        ps.open.remove(&pos);
        ps.links.push(Link::Axiom { neg, pos });
        Ok(ps)
    }

    pub(crate) fn raw_atom(&self, n: NodeId) -> &Atom {
        match &self.nodes[n].formula {
            Formula::Atom(a) => a,
            _ => panic!("node {n} is not atomic"),
        }
    }

    /// The atom at node `n` under the current substitution.
    pub fn atom(&self, n: NodeId) -> Option<Atom> {
        match &self.nodes[n].formula {
            Formula::Atom(a) => Some(a.apply(&self.subst)),
            _ => None,
        }
    }

    /// Node formula under the current substitution.
    pub fn formula(&self, n: NodeId) -> Formula {
        self.nodes[n].formula.substitute(&self.subst)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, n: NodeId) -> &Node {
        &self.nodes[n]
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// The logical link whose parent is `n`, if `n` is not atomic.
    pub fn link_of(&self, n: NodeId) -> Option<&Link> {
        self.parent_link.get(n).copied().flatten().map(|i| &self.links[i])
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn antecedent_count(&self) -> usize {
        self.antecedent_count
    }

    pub fn open_atoms(&self) -> &BTreeSet<NodeId> {
        &self.open
    }

    pub fn is_complete(&self) -> bool {
        self.open.is_empty()
    }

    pub fn subst(&self) -> &Substitution {
        &self.subst
    }

    pub fn meta_count(&self) -> u32 {
        self.supply.metas_issued()
    }

    pub fn eigen_labels(&self) -> Vec<u32> {
        self.links
            .iter()
            .filter_map(|l| match l {
                Link::UniversalUnary { eigen, .. } => Some(*eigen),
                _ => None,
            })
            .collect()
    }

    pub fn atom_nodes(&self) -> Vec<NodeId> {
        (0..self.nodes.len()).filter(|&n| self.nodes[n].formula.is_atom()).collect()
    }

    pub fn axiom_links(&self) -> Vec<(NodeId, NodeId)> {
        self.links
            .iter()
            .filter_map(|l| match l {
                Link::Axiom { neg, pos } => Some((*neg, *pos)),
                _ => None,
            })
            .collect()
    }

    /// Atom nodes in the subtree rooted at `n`.
    pub fn atoms_below(&self, n: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            match self.link_of(m) {
                None => out.push(m),
                Some(Link::SolidBinary { left, right, .. }) | Some(Link::ParBinary { left, right, .. }) => {
                    stack.push(*right);
                    stack.push(*left);
                }
                Some(Link::SolidUnary { child, .. }) | Some(Link::UniversalUnary { child, .. }) => stack.push(*child),
                Some(_) => {}
            }
        }
        out.sort_unstable();
        out
    }

    /// Line-oriented dump: one `NODE` line per occurrence, then one `LINK`
    /// line per link ordered by node id.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "NODE {i} {} {}", n.polarity.sign(), format_mill1(&self.formula(i)));
        }
        let mut links = self.links.clone();
        links.sort_by_key(|l| l.sort_key());
        for l in links {
            out.push_str(&l.dump_line());
            out.push('\n');
        }
        out
    }
}
