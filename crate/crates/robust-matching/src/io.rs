//! Instance file format and seeded instance generators.
//!
//! The text format is 1-based to match the usual presentation of these
//! markets; ids are 0-based everywhere else in the crate.
//!
//! ```text
//! # comment
//! n 4
//! W 1 : 1 3 2 4
//! ...
//! F 4 : 3 1 4 2
//! ```
//!
//! Lists are most-preferred first. Every worker line `W <i> : ...` and firm
//! line `F <j> : ...` must appear exactly once.

use crate::error::{Error, Result};
use crate::instance::{classify_pair, Instance};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut n: Option<usize> = None;
    let mut worker_prefs: Vec<Option<Vec<usize>>> = Vec::new();
    let mut firm_prefs: Vec<Option<Vec<usize>>> = Vec::new();

    let err = |line: usize, msg: String| Error::Parse { line, msg };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        match head {
            "n" => {
                if n.is_some() {
                    return Err(err(line_no, "duplicate n header".into()));
                }
                let v: usize = tokens
                    .next()
                    .ok_or_else(|| err(line_no, "missing size after n".into()))?
                    .parse()
                    .map_err(|_| err(line_no, "bad size after n".into()))?;
                if v == 0 {
                    return Err(err(line_no, "n must be positive".into()));
                }
                n = Some(v);
                worker_prefs = vec![None; v];
                firm_prefs = vec![None; v];
            }
            "W" | "F" => {
                let n = n.ok_or_else(|| err(line_no, "preference line before n header".into()))?;
                let id: usize = tokens
                    .next()
                    .ok_or_else(|| err(line_no, "missing agent id".into()))?
                    .parse()
                    .map_err(|_| err(line_no, "bad agent id".into()))?;
                if id == 0 || id > n {
                    return Err(err(line_no, format!("agent id {id} out of range 1..{n}")));
                }
                match tokens.next() {
                    Some(":") => {}
                    _ => return Err(err(line_no, "expected ':' after agent id".into())),
                }
                let mut list = Vec::with_capacity(n);
                for tok in tokens {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| err(line_no, format!("bad id '{tok}' in list")))?;
                    if v == 0 || v > n {
                        return Err(err(line_no, format!("list id {v} out of range 1..{n}")));
                    }
                    list.push(v - 1);
                }
                if list.len() != n {
                    return Err(err(
                        line_no,
                        format!("list has {} entries, expected {n}", list.len()),
                    ));
                }
                let slot = if head == "W" {
                    &mut worker_prefs[id - 1]
                } else {
                    &mut firm_prefs[id - 1]
                };
                if slot.is_some() {
                    return Err(err(line_no, format!("duplicate list for {head} {id}")));
                }
                *slot = Some(list);
            }
            other => {
                return Err(err(line_no, format!("unknown directive '{other}'")));
            }
        }
    }

    let n = n.ok_or_else(|| err(0, "missing n header".into()))?;
    let collect = |prefs: Vec<Option<Vec<usize>>>, what: &str| -> Result<Vec<Vec<usize>>> {
        prefs
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                p.ok_or_else(|| Error::InvalidInput(format!("missing list for {what} {}", i + 1)))
            })
            .collect()
    };
    let _ = n;
    Instance::new(collect(worker_prefs, "worker")?, collect(firm_prefs, "firm")?)
}

/// Canonical text form; `parse_instance(serialize_instance(i)) == i`.
pub fn serialize_instance(inst: &Instance) -> String {
    let n = inst.n();
    let mut out = String::new();
    out.push_str(&format!("n {n}\n"));
    for w in 0..n {
        let list: Vec<String> = inst.worker_list(w).iter().map(|f| (f + 1).to_string()).collect();
        out.push_str(&format!("W {} : {}\n", w + 1, list.join(" ")));
    }
    for f in 0..n {
        let list: Vec<String> = inst.firm_list(f).iter().map(|w| (w + 1).to_string()).collect();
        out.push_str(&format!("F {} : {}\n", f + 1, list.join(" ")));
    }
    out
}

fn random_instance(n: usize, rng: &mut ChaCha8Rng) -> Instance {
    let mut lists = |_: ()| -> Vec<Vec<usize>> {
        (0..n)
            .map(|_| {
                let mut l: Vec<usize> = (0..n).collect();
                l.shuffle(rng);
                l
            })
            .collect()
    };
    let w = lists(());
    let f = lists(());
    Instance::new(w, f).unwrap()
}

/// Uniformly random instance A, and B obtained by re-randomizing exactly `p`
/// worker lists and `q` firm lists (resampling until each changed list really
/// differs). Deterministic in the seed.
pub fn generate_pair(n: usize, p: usize, q: usize, seed: u64) -> Result<(Instance, Instance)> {
    if p > n || q > n {
        return Err(Error::Precondition(format!(
            "p={p}, q={q} must be at most n={n}"
        )));
    }
    if n < 2 && p + q > 0 {
        return Err(Error::Precondition(
            "a 1-element list cannot be changed".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_instance(n, &mut rng);

    let mut agents: Vec<usize> = (0..n).collect();
    agents.shuffle(&mut rng);
    let changed_workers: Vec<usize> = agents[..p].to_vec();
    agents.shuffle(&mut rng);
    let changed_firms: Vec<usize> = agents[..q].to_vec();

    let mut worker_prefs: Vec<Vec<usize>> = (0..n).map(|w| a.worker_list(w).to_vec()).collect();
    let mut firm_prefs: Vec<Vec<usize>> = (0..n).map(|f| a.firm_list(f).to_vec()).collect();
    for &w in &changed_workers {
        loop {
            worker_prefs[w].shuffle(&mut rng);
            if worker_prefs[w] != a.worker_list(w) {
                break;
            }
        }
    }
    for &f in &changed_firms {
        loop {
            firm_prefs[f].shuffle(&mut rng);
            if firm_prefs[f] != a.firm_list(f) {
                break;
            }
        }
    }
    let b = Instance::new(worker_prefs, firm_prefs)?;
    debug_assert_eq!(classify_pair(&a, &b)?.ptype(), (p, q));
    Ok((a, b))
}

/// Random pair where B differs from A by a single upward shift: `target`
/// moves up `k >= 1` positions in one agent's list. Returns the pair plus the
/// shift that was applied.
pub fn generate_upward_shift_pair(
    n: usize,
    seed: u64,
) -> Result<(Instance, Instance, crate::lattice::UpwardShift)> {
    use crate::instance::Agent;
    use rand::Rng;
    if n < 2 {
        return Err(Error::Precondition("need n >= 2 to shift".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_instance(n, &mut rng);
    let idx = rng.gen_range(0..n);
    let agent = if rng.gen_bool(0.5) {
        Agent::Worker(idx)
    } else {
        Agent::Firm(idx)
    };
    let pos = rng.gen_range(1..n);
    let list = match agent {
        Agent::Worker(w) => a.worker_list(w),
        Agent::Firm(f) => a.firm_list(f),
    };
    let target = list[pos];
    let k = rng.gen_range(1..=pos);
    let b = crate::instance::apply_upward_shift(&a, agent, target, k)?;
    Ok((
        a,
        b,
        crate::lattice::UpwardShift { agent, target, k },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_instance_roundtrip() {
        let inst = parse_instance("n 1\nW 1 : 1\nF 1 : 1\n").unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "n 2\nW 1 : 1 1\nW 2 : 1 2\nF 1 : 1 2\nF 2 : 2 1\n";
        match parse_instance(bad) {
            Err(Error::InvalidInput(_)) => {} // duplicate in list caught by Instance::new
            other => panic!("expected invalid input, got {other:?}"),
        }
        let bad = "n 2\nW 1 : 1\n";
        match parse_instance(bad) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected parse error on line 2, got {other:?}"),
        }
        let bad = "W 1 : 1\n";
        assert!(matches!(parse_instance(bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn generated_pair_matches_requested_type() {
        for seed in 0..50 {
            let (a, b) = generate_pair(6, 1, 2, seed).unwrap();
            assert_eq!(classify_pair(&a, &b).unwrap().ptype(), (1, 2));
        }
        let (a, b) = generate_pair(4, 0, 0, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generation_is_deterministic() {
        let (a1, b1) = generate_pair(7, 2, 1, 99).unwrap();
        let (a2, b2) = generate_pair(7, 2, 1, 99).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
    }

    proptest! {
        #[test]
        fn roundtrip_random_instances(seed in 0u64..500, n in 1usize..8) {
            let (a, _) = generate_pair(n, 0, 0, seed).unwrap();
            let text = serialize_instance(&a);
            prop_assert_eq!(parse_instance(&text).unwrap(), a);
        }

        #[test]
        fn shift_pairs_change_exactly_one_agent(seed in 0u64..200) {
            let (a, b, _) = generate_upward_shift_pair(5, seed).unwrap();
            let prof = classify_pair(&a, &b).unwrap();
            prop_assert_eq!(prof.p() + prof.q(), 1);
        }
    }
}
