//! Random generators shared by the integration tests.

#![allow(dead_code)]

use linnet::{Atom, Formula, LambekFormula, Polarity, ProofStructure, Sequent, Term};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_atoms: usize,
    pub max_quantifiers: usize,
    pub max_depth: usize,
    pub max_antecedents: usize,
}

pub const SMALL: Limits = Limits { max_atoms: 8, max_quantifiers: 3, max_depth: 4, max_antecedents: 3 };

struct Slot {
    polarity: Polarity,
    scope: Vec<u32>,
}

struct Shaper<'r> {
    rng: &'r mut ChaCha8Rng,
    limits: Limits,
    slots: Vec<Slot>,
    quantifiers: usize,
    next_bound: u32,
}

impl Shaper<'_> {
    /// A formula skeleton whose atoms are placeholders `#k` (slot `k`).
    fn shape(&mut self, depth: usize, pol: Polarity, scope: &mut Vec<u32>, atoms_left: &mut usize) -> Formula {
        let leaf = depth == 0 || *atoms_left <= 1 || self.rng.gen_bool(0.3);
        if leaf {
            return self.slot(pol, scope, atoms_left);
        }
        let quant_ok = self.quantifiers < self.limits.max_quantifiers;
        match self.rng.gen_range(0..if quant_ok { 5 } else { 3 }) {
            0 | 1 => {
                let a = self.shape(depth - 1, pol.flip(), scope, atoms_left);
                let b = self.shape(depth - 1, pol, scope, atoms_left);
                Formula::lolli(a, b)
            }
            2 => {
                let a = self.shape(depth - 1, pol, scope, atoms_left);
                let b = self.shape(depth - 1, pol, scope, atoms_left);
                Formula::tensor(a, b)
            }
            k => {
                self.quantifiers += 1;
                let v = self.next_bound;
                self.next_bound += 1;
                scope.push(v);
                let body = self.shape(depth - 1, pol, scope, atoms_left);
                scope.pop();
                if k == 3 {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
        }
    }

    fn slot(&mut self, pol: Polarity, scope: &[u32], atoms_left: &mut usize) -> Formula {
        *atoms_left = atoms_left.saturating_sub(1);
        let k = self.slots.len();
        self.slots.push(Slot { polarity: pol, scope: scope.to_vec() });
        Formula::atom(&format!("#{k}"), vec![])
    }
}

fn fill(f: &Formula, atoms: &[Atom]) -> Formula {
    match f {
        Formula::Atom(a) => {
            let k: usize = a.pred[1..].parse().expect("placeholder");
            Formula::Atom(atoms[k].clone())
        }
        Formula::Tensor(a, b) => Formula::tensor(fill(a, atoms), fill(b, atoms)),
        Formula::Lolli(a, b) => Formula::lolli(fill(a, atoms), fill(b, atoms)),
        Formula::Forall(v, b) => Formula::forall(*v, fill(b, atoms)),
        Formula::Exists(v, b) => Formula::exists(*v, fill(b, atoms)),
    }
}

fn random_term(rng: &mut ChaCha8Rng, scope: &[u32]) -> Term {
    let r = rng.gen_range(0..10);
    if !scope.is_empty() && r < 6 {
        let t = Term::bound(*scope.choose(rng).unwrap());
        if r == 0 {
            Term::Fun("f".into(), vec![t])
        } else {
            t
        }
    } else {
        Term::Pos(rng.gen_range(0..2))
    }
}

/// A random sequent within `limits`. Most generated sequents pair their
/// atoms up (equal positive and negative counts per predicate) so that a
/// good share is derivable; one in ten is left unconstrained.
pub fn random_sequent(rng: &mut ChaCha8Rng, limits: Limits) -> Sequent {
    let paired = rng.gen_range(0..10) != 0;
    loop {
        let n_ante = rng.gen_range(0..=limits.max_antecedents);
        let mut atoms_left = rng.gen_range(2..=limits.max_atoms);
        let mut shaper = Shaper { rng: &mut *rng, limits, slots: Vec::new(), quantifiers: 0, next_bound: 0 };
        let mut ante = Vec::new();
        let budget = atoms_left;
        for i in 0..n_ante {
            if atoms_left == 0 {
                break;
            }
            let share = if i + 1 == n_ante { atoms_left.saturating_sub(1).max(1) } else { (budget / (n_ante + 1)).max(1) };
            let mut mine = share.min(atoms_left);
            let before = mine;
            ante.push(shaper.shape(limits.max_depth, Polarity::Neg, &mut Vec::new(), &mut mine));
            atoms_left -= before - mine;
        }
        let mut last = atoms_left.max(1);
        let goal = shaper.shape(limits.max_depth, Polarity::Pos, &mut Vec::new(), &mut last);
        let slots = shaper.slots;
        if slots.len() > limits.max_atoms {
            continue;
        }
        let pos: Vec<usize> = (0..slots.len()).filter(|&k| slots[k].polarity == Polarity::Pos).collect();
        let mut neg: Vec<usize> = (0..slots.len()).filter(|&k| slots[k].polarity == Polarity::Neg).collect();
        if paired && pos.len() != neg.len() {
            continue;
        }
        neg.shuffle(rng);
        let preds = [("p", 1), ("q", 1), ("r", 0)];
        let mut atoms: Vec<Option<Atom>> = vec![None; slots.len()];
        let mut make = |k: usize, pred: (&str, usize), rng: &mut ChaCha8Rng| {
            let args = (0..pred.1).map(|_| random_term(rng, &slots[k].scope)).collect();
            atoms[k] = Some(Atom::new(pred.0, args));
        };
        if paired {
            for (&p, &n) in pos.iter().zip(&neg) {
                let pred = *preds.choose(rng).unwrap();
                make(p, pred, rng);
                make(n, pred, rng);
            }
        } else {
            for k in 0..slots.len() {
                let pred = *preds.choose(rng).unwrap();
                make(k, pred, rng);
            }
        }
        let atoms: Vec<Atom> = atoms.into_iter().map(|a| a.expect("every slot filled")).collect();
        let antecedents = ante.iter().map(|f| fill(f, &atoms)).collect();
        return Sequent::new(antecedents, fill(&goal, &atoms));
    }
}

/// A complete proof structure: a random sequent with a random perfect
/// matching of unifiable atoms. `None` if the sequent admits none after a
/// few attempts.
pub fn random_complete_structure(rng: &mut ChaCha8Rng, seq: &Sequent) -> Option<ProofStructure> {
    if !seq.is_balanced() {
        return None;
    }
    let base = ProofStructure::unfold(seq);
    'attempt: for _ in 0..8 {
        let mut ps = base.clone();
        while let Some(&a) = ps.open_atoms().iter().collect::<Vec<_>>().choose(rng).copied() {
            let partners: Vec<usize> = ps
                .open_atoms()
                .iter()
                .copied()
                .filter(|&b| ps.node(b).polarity != ps.node(a).polarity)
                .filter(|&b| {
                    let (n, p) = if ps.node(a).polarity == Polarity::Neg { (a, b) } else { (b, a) };
                    ps.add_axiom_link(n, p).is_ok()
                })
                .collect();
            let Some(&b) = partners.choose(rng) else { continue 'attempt };
            let (n, p) = if ps.node(a).polarity == Polarity::Neg { (a, b) } else { (b, a) };
            ps = ps.add_axiom_link(n, p).expect("checked");
        }
        return Some(ps);
    }
    None
}

const LAMBEK_ATOMS: [&str; 3] = ["a", "b", "c"];

pub fn random_lambek(rng: &mut ChaCha8Rng, depth: usize) -> LambekFormula {
    if depth == 0 || rng.gen_bool(0.4) {
        return LambekFormula::atom(LAMBEK_ATOMS.choose(rng).unwrap());
    }
    let a = random_lambek(rng, depth - 1);
    let b = random_lambek(rng, depth - 1);
    match rng.gen_range(0..5) {
        0 | 1 => LambekFormula::over(a, b),
        2 | 3 => LambekFormula::under(a, b),
        _ => LambekFormula::prod(a, b),
    }
}

/// A derivable Lambek sequent built bottom-up from random rule applications.
pub fn derivable_lambek(rng: &mut ChaCha8Rng, budget: usize) -> (Vec<LambekFormula>, LambekFormula) {
    use LambekFormula as L;
    if budget == 0 || rng.gen_bool(0.2) {
        let p = L::atom(LAMBEK_ATOMS.choose(rng).unwrap());
        return (vec![p.clone()], p);
    }
    let (mut g, c) = derivable_lambek(rng, budget - 1);
    match rng.gen_range(0..6) {
        // Γ,B ⊢ A  ⟹  Γ ⊢ A/B
        0 if !g.is_empty() => {
            let b = g.pop().unwrap();
            (g, L::over(c, b))
        }
        // B,Γ ⊢ A  ⟹  Γ ⊢ B\A
        1 if !g.is_empty() => {
            let b = g.remove(0);
            (g, L::under(b, c))
        }
        // Δ ⊢ B and Γ,A,Σ ⊢ C  ⟹  Γ,A/B,Δ,Σ ⊢ C
        2 if !g.is_empty() => {
            let (delta, b) = derivable_lambek(rng, budget / 2);
            let i = rng.gen_range(0..g.len());
            let a = g.remove(i);
            let mut out = g[..i].to_vec();
            out.push(L::over(a, b));
            out.extend(delta);
            out.extend_from_slice(&g[i..]);
            (out, c)
        }
        // Δ ⊢ B and Γ,A,Σ ⊢ C  ⟹  Γ,Δ,B\A,Σ ⊢ C
        3 if !g.is_empty() => {
            let (delta, b) = derivable_lambek(rng, budget / 2);
            let i = rng.gen_range(0..g.len());
            let a = g.remove(i);
            let mut out = g[..i].to_vec();
            out.extend(delta);
            out.push(L::under(b, a));
            out.extend_from_slice(&g[i..]);
            (out, c)
        }
        // Γ₁ ⊢ A and Γ₂ ⊢ B  ⟹  Γ₁,Γ₂ ⊢ A•B
        4 => {
            let (g2, d) = derivable_lambek(rng, budget / 2);
            g.extend(g2);
            (g, L::prod(c, d))
        }
        // Γ,A,B,Δ ⊢ C  ⟹  Γ,A•B,Δ ⊢ C
        _ if g.len() >= 2 => {
            let i = rng.gen_range(0..g.len() - 1);
            let b = g.remove(i + 1);
            let a = g.remove(i);
            g.insert(i, L::prod(a, b));
            (g, c)
        }
        _ => (g, c),
    }
}

/// A random Lambek sequent with at most `max_formulas` formulas in total
/// and slash depth at most `max_depth`: half built to be derivable (then
/// possibly perturbed), half fully random.
pub fn random_lambek_sequent(rng: &mut ChaCha8Rng, max_formulas: usize, max_depth: usize) -> (Vec<LambekFormula>, LambekFormula) {
    loop {
        let (mut ante, goal) = if rng.gen_bool(0.5) {
            let (mut ante, goal) = derivable_lambek(rng, 5);
            if rng.gen_bool(0.3) && ante.len() >= 2 {
                let i = rng.gen_range(0..ante.len() - 1);
                ante.swap(i, i + 1);
            }
            (ante, goal)
        } else {
            let n = rng.gen_range(1..max_formulas);
            ((0..n).map(|_| random_lambek(rng, 2)).collect(), random_lambek(rng, 2))
        };
        if ante.is_empty() {
            ante.push(LambekFormula::atom("a"));
        }
        let fits = ante.len() < max_formulas
            && ante.iter().chain(std::iter::once(&goal)).all(|f| f.slash_depth() <= max_depth);
        if fits {
            return (ante, goal);
        }
    }
}
