//! Instances, matchings, blocking pairs and classification of instance pairs
//! by which agents changed their preference lists.
//!
//! Ids are 0-based contiguous integers internally; the text file format is
//! 1-based. Rank tables are precomputed so preference comparisons are O(1).

use crate::error::{Error, Result};

/// One side of the market.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Worker,
    Firm,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Worker => Side::Firm,
            Side::Firm => Side::Worker,
        }
    }
}

/// An agent on either side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Agent {
    Worker(usize),
    Firm(usize),
}

impl Agent {
    pub fn side(self) -> Side {
        match self {
            Agent::Worker(_) => Side::Worker,
            Agent::Firm(_) => Side::Firm,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Agent::Worker(i) | Agent::Firm(i) => i,
        }
    }
}

/// A stable matching instance: n workers and n firms, each with a strict
/// complete preference list over the opposite side, most preferred first.
#[derive(Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    worker_prefs: Vec<Vec<usize>>,
    firm_prefs: Vec<Vec<usize>>,
    // rank[a][b] = position of b in a's list; smaller is better
    worker_rank: Vec<Vec<usize>>,
    firm_rank: Vec<Vec<usize>>,
}

fn rank_table(prefs: &[Vec<usize>], n: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    let mut table = Vec::with_capacity(prefs.len());
    for (a, list) in prefs.iter().enumerate() {
        if list.len() != n {
            return Err(Error::InvalidInput(format!(
                "{what} {a} has {} entries, expected {n}",
                list.len()
            )));
        }
        let mut rank = vec![usize::MAX; n];
        for (pos, &b) in list.iter().enumerate() {
            if b >= n {
                return Err(Error::InvalidInput(format!(
                    "{what} {a} ranks out-of-range id {b}"
                )));
            }
            if rank[b] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "{what} {a} ranks id {b} twice"
                )));
            }
            rank[b] = pos;
        }
        table.push(rank);
    }
    Ok(table)
}

impl Instance {
    /// Builds an instance from 0-based preference lists, validating that each
    /// list is a permutation of the opposite side.
    pub fn new(worker_prefs: Vec<Vec<usize>>, firm_prefs: Vec<Vec<usize>>) -> Result<Instance> {
        let n = worker_prefs.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty instance".into()));
        }
        if firm_prefs.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} worker lists but {} firm lists",
                n,
                firm_prefs.len()
            )));
        }
        let worker_rank = rank_table(&worker_prefs, n, "worker")?;
        let firm_rank = rank_table(&firm_prefs, n, "firm")?;
        Ok(Instance {
            n,
            worker_prefs,
            firm_prefs,
            worker_rank,
            firm_rank,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn worker_list(&self, w: usize) -> &[usize] {
        &self.worker_prefs[w]
    }

    pub fn firm_list(&self, f: usize) -> &[usize] {
        &self.firm_prefs[f]
    }

    pub fn worker_rank(&self, w: usize, f: usize) -> usize {
        self.worker_rank[w][f]
    }

    pub fn firm_rank(&self, f: usize, w: usize) -> usize {
        self.firm_rank[f][w]
    }

    /// Does worker w strictly prefer firm f1 to firm f2?
    pub fn worker_prefers(&self, w: usize, f1: usize, f2: usize) -> bool {
        self.worker_rank[w][f1] < self.worker_rank[w][f2]
    }

    /// Does firm f strictly prefer worker w1 to worker w2?
    pub fn firm_prefers(&self, f: usize, w1: usize, w2: usize) -> bool {
        self.firm_rank[f][w1] < self.firm_rank[f][w2]
    }

    /// Swaps the roles of workers and firms.
    pub fn transposed(&self) -> Instance {
        Instance {
            n: self.n,
            worker_prefs: self.firm_prefs.clone(),
            firm_prefs: self.worker_prefs.clone(),
            worker_rank: self.firm_rank.clone(),
            firm_rank: self.worker_rank.clone(),
        }
    }

    fn check_ids(&self, w: usize, f: usize) -> Result<()> {
        if w >= self.n || f >= self.n {
            return Err(Error::InvalidInput(format!(
                "agent ids ({w},{f}) out of range for n={}",
                self.n
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Instance(n={}, W={:?}, F={:?})", self.n, self.worker_prefs, self.firm_prefs)
    }
}

/// A perfect matching, stored worker-indexed; the firm-indexed inverse is
/// derived on demand.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    partner_of_worker: Vec<usize>,
}

impl Matching {
    pub fn new(partner_of_worker: Vec<usize>) -> Result<Matching> {
        let n = partner_of_worker.len();
        let mut seen = vec![false; n];
        for &f in &partner_of_worker {
            if f >= n {
                return Err(Error::InvalidInput(format!("firm id {f} out of range")));
            }
            if seen[f] {
                return Err(Error::InvalidInput(format!("firm {f} matched twice")));
            }
            seen[f] = true;
        }
        Ok(Matching { partner_of_worker })
    }

    pub fn n(&self) -> usize {
        self.partner_of_worker.len()
    }

    /// Firm matched to worker w.
    pub fn partner_of_worker(&self, w: usize) -> usize {
        self.partner_of_worker[w]
    }

    /// Worker matched to firm f, by scanning the inverse.
    pub fn partner_of_firm(&self, f: usize) -> usize {
        self.partner_of_worker.iter().position(|&g| g == f).unwrap()
    }

    /// Full firm-indexed inverse.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (w, &f) in self.partner_of_worker.iter().enumerate() {
            inv[f] = w;
        }
        inv
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.partner_of_worker
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner_of_worker.iter().copied().enumerate()
    }

    pub fn contains_pair(&self, w: usize, f: usize) -> bool {
        self.partner_of_worker[w] == f
    }

    /// The matching seen from the other side (workers and firms swapped).
    pub fn transposed(&self) -> Matching {
        Matching {
            partner_of_worker: self.inverse(),
        }
    }
}

impl std::fmt::Debug for Matching {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M{:?}", self.partner_of_worker)
    }
}

/// Which agents changed lists between two instances, and the (p, q) type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationProfile {
    pub changed_workers: Vec<usize>,
    pub changed_firms: Vec<usize>,
}

impl PerturbationProfile {
    /// Number of changed workers.
    pub fn p(&self) -> usize {
        self.changed_workers.len()
    }

    /// Number of changed firms.
    pub fn q(&self) -> usize {
        self.changed_firms.len()
    }

    pub fn ptype(&self) -> (usize, usize) {
        (self.p(), self.q())
    }
}

/// Is (w, f) a blocking pair for m under inst: both strictly prefer each
/// other to their assigned partners?
pub fn is_blocking_pair(inst: &Instance, m: &Matching, w: usize, f: usize) -> Result<bool> {
    inst.check_ids(w, f)?;
    if m.n() != inst.n() {
        return Err(Error::InvalidInput(format!(
            "matching size {} does not fit instance n={}",
            m.n(),
            inst.n()
        )));
    }
    if m.contains_pair(w, f) {
        return Ok(false);
    }
    let mw = m.partner_of_worker(w);
    let mf = m.partner_of_firm(f);
    Ok(inst.worker_prefers(w, f, mw) && inst.firm_prefers(f, w, mf))
}

/// A matching is stable when it has no blocking pair.
pub fn is_stable(inst: &Instance, m: &Matching) -> Result<bool> {
    if m.n() != inst.n() {
        return Err(Error::InvalidInput(format!(
            "matching size {} does not fit instance n={}",
            m.n(),
            inst.n()
        )));
    }
    let inv = m.inverse();
    for w in 0..inst.n() {
        let mw = m.partner_of_worker(w);
        // firms w strictly prefers to its partner
        for &f in &inst.worker_list(w)[..inst.worker_rank(w, mw)] {
            if inst.firm_prefers(f, w, inv[f]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Returns exactly the agents whose lists differ between the two instances.
pub fn classify_pair(a: &Instance, b: &Instance) -> Result<PerturbationProfile> {
    if a.n() != b.n() {
        return Err(Error::InvalidInput(format!(
            "instance sizes differ: {} vs {}",
            a.n(),
            b.n()
        )));
    }
    let changed_workers = (0..a.n())
        .filter(|&w| a.worker_list(w) != b.worker_list(w))
        .collect();
    let changed_firms = (0..a.n())
        .filter(|&f| a.firm_list(f) != b.firm_list(f))
        .collect();
    Ok(PerturbationProfile {
        changed_workers,
        changed_firms,
    })
}

/// Moves `target` up `k` positions in `agent`'s preference list, keeping all
/// other relative orders; every other agent is untouched.
pub fn apply_upward_shift(inst: &Instance, agent: Agent, target: usize, k: usize) -> Result<Instance> {
    let n = inst.n();
    if agent.index() >= n || target >= n {
        return Err(Error::InvalidInput("agent id out of range".into()));
    }
    let pos = match agent {
        Agent::Worker(w) => inst.worker_rank(w, target),
        Agent::Firm(f) => inst.firm_rank(f, target),
    };
    if k > pos {
        return Err(Error::InvalidInput(format!(
            "cannot shift up {k} positions from position {pos}"
        )));
    }
    let mut worker_prefs: Vec<Vec<usize>> = (0..n).map(|w| inst.worker_list(w).to_vec()).collect();
    let mut firm_prefs: Vec<Vec<usize>> = (0..n).map(|f| inst.firm_list(f).to_vec()).collect();
    let list = match agent {
        Agent::Worker(w) => &mut worker_prefs[w],
        Agent::Firm(f) => &mut firm_prefs[f],
    };
    list.remove(pos);
    list.insert(pos - k, target);
    Instance::new(worker_prefs, firm_prefs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn blocking_pair_fig4_lemma5_witness() {
        // On the (0,1) corpus pair, M1 has (worker c, firm 1) as its only
        // blocking pair once firm 1's list is permuted. Workers a..d are ids
        // 0..3 and firms 1..4 are ids 0..3.
        let (a, b) = corpus::fig4_pair();
        let m1 = Matching::new(vec![0, 1, 3, 2]).unwrap();
        assert!(is_stable(&a, &m1).unwrap());
        assert!(is_blocking_pair(&b, &m1, 2, 0).unwrap());
        assert!(!is_stable(&b, &m1).unwrap());
    }

    #[test]
    fn da_output_never_blocks() {
        let (a, _) = corpus::fig4_pair();
        let m = crate::da::deferred_acceptance(&a, Side::Worker);
        for w in 0..4 {
            for f in 0..4 {
                assert!(!is_blocking_pair(&a, &m, w, f).unwrap());
            }
        }
    }

    #[test]
    fn blocking_pair_matches_definition_on_random_instance() {
        let (inst, _) = crate::io::generate_pair(5, 0, 0, 0).unwrap();
        let m = crate::da::deferred_acceptance(&inst, Side::Worker);
        let inv = m.inverse();
        for w in 0..5 {
            for f in 0..5 {
                // re-evaluate the definition by hand
                let expect = !m.contains_pair(w, f)
                    && inst.worker_rank(w, f) < inst.worker_rank(w, m.partner_of_worker(w))
                    && inst.firm_rank(f, w) < inst.firm_rank(f, inv[f]);
                assert_eq!(is_blocking_pair(&inst, &m, w, f).unwrap(), expect);
            }
        }
    }

    #[test]
    fn stability_on_figlp() {
        let (a, b) = corpus::figlp_pair();
        let m = Matching::new(vec![0, 1, 2, 3]).unwrap();
        assert!(is_stable(&a, &m).unwrap());
        assert!(!is_stable(&b, &m).unwrap());
        let n1 = Instance::new(vec![vec![0]], vec![vec![0]]).unwrap();
        assert!(is_stable(&n1, &Matching::new(vec![0]).unwrap()).unwrap());
    }

    #[test]
    fn classify_corpus_pairs() {
        let (a, b) = corpus::figlp_pair();
        let prof = classify_pair(&a, &b).unwrap();
        assert_eq!(prof.changed_workers, vec![0, 1]);
        assert_eq!(prof.changed_firms, vec![0, 1]);
        assert_eq!(prof.ptype(), (2, 2));

        let (a, b) = corpus::fig4_pair();
        let prof = classify_pair(&a, &b).unwrap();
        assert_eq!(prof.ptype(), (0, 1));
        assert_eq!(prof.changed_firms, vec![0]);

        assert_eq!(classify_pair(&a, &a).unwrap().ptype(), (0, 0));
        // symmetry
        let p1 = classify_pair(&a, &b).unwrap();
        let p2 = classify_pair(&b, &a).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn upward_shift_moves_target() {
        let inst = Instance::new(
            vec![vec![0, 1, 2, 3]; 4],
            vec![vec![1, 2, 3, 0]; 4],
        )
        .unwrap();
        // full promotion: last element to the front
        let shifted = apply_upward_shift(&inst, Agent::Firm(2), 0, 3).unwrap();
        assert_eq!(shifted.firm_list(2), &[0, 1, 2, 3]);
        // k = 0 is the identity
        let same = apply_upward_shift(&inst, Agent::Firm(2), 0, 0).unwrap();
        assert_eq!(&same, &inst);
        // k beyond current position is an error
        assert!(apply_upward_shift(&inst, Agent::Firm(2), 1, 1).is_err());
        // exactly one agent differs
        let prof = classify_pair(&inst, &shifted).unwrap();
        assert_eq!(prof.ptype(), (0, 1));
    }

    #[test]
    fn invalid_lists_rejected() {
        assert!(Instance::new(vec![vec![0, 0]], vec![vec![0, 1]]).is_err());
        assert!(Instance::new(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 1], vec![2, 0]]).is_err());
        assert!(Matching::new(vec![1, 1]).is_err());
    }
}
