//! Two-sided matching engines.
//!
//! Agents on the *left* side (subproblems in the optimizer) and on the *right*
//! side (candidate solutions) rank each other. Three engines are provided:
//!
//! * [`stable_match_complete`]: classic deferred acceptance with complete
//!   lists, proposals made by left agents picked at random from the unmatched
//!   pool.
//! * [`stable_match_incomplete`]: the same procedure when right agents only
//!   accept the first `r^i` entries of their list.
//! * [`many_one_match`]: right-proposing college admission with one common
//!   quota shared by every left agent.
//!
//! [`verify_stability`] enumerates blocking pairs and is used as a check on
//! all of the above.
//!
//! Nothing here knows about objectives or weight vectors; rankings arrive
//! already strict.

use std::collections::{BTreeSet, BinaryHeap};

use rand::Rng;

use crate::error::{Error, Result};

const NOT_RANKED: u32 = u32::MAX;

/// Ranked preference lists of both sides plus the acceptable prefix length of
/// every right agent's list.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceProfile {
    n_left: usize,
    n_right: usize,
    left_lists: Vec<Vec<usize>>,
    right_lists: Vec<Vec<usize>>,
    right_lengths: Vec<usize>,
    // rank of right agent r on left agent l's list, NOT_RANKED if absent
    left_rank: Vec<u32>,
    // rank of left agent l within right agent r's acceptable prefix
    right_rank: Vec<u32>,
}

impl PreferenceProfile {
    /// Builds and validates a profile. When `right_lengths` is `None` every
    /// right list is acceptable in full.
    pub fn new(
        n_left: usize,
        n_right: usize,
        left_lists: Vec<Vec<usize>>,
        right_lists: Vec<Vec<usize>>,
        right_lengths: Option<Vec<usize>>,
    ) -> Result<Self> {
        if left_lists.len() != n_left {
            return Err(Error::Profile(format!(
                "{} left lists for {} left agents",
                left_lists.len(),
                n_left
            )));
        }
        if right_lists.len() != n_right {
            return Err(Error::Profile(format!(
                "{} right lists for {} right agents",
                right_lists.len(),
                n_right
            )));
        }
        let right_lengths =
            right_lengths.unwrap_or_else(|| right_lists.iter().map(Vec::len).collect());
        if right_lengths.len() != n_right {
            return Err(Error::Profile(format!(
                "{} list lengths for {} right agents",
                right_lengths.len(),
                n_right
            )));
        }

        let mut left_rank = vec![NOT_RANKED; n_left * n_right];
        for (l, list) in left_lists.iter().enumerate() {
            for (pos, &r) in list.iter().enumerate() {
                if r >= n_right {
                    return Err(Error::Profile(format!(
                        "left agent {l} ranks right agent {r}, only {n_right} exist"
                    )));
                }
                let slot = &mut left_rank[l * n_right + r];
                if *slot != NOT_RANKED {
                    return Err(Error::Profile(format!(
                        "left agent {l} ranks right agent {r} twice"
                    )));
                }
                *slot = pos as u32;
            }
        }

        let mut right_rank = vec![NOT_RANKED; n_right * n_left];
        for (r, list) in right_lists.iter().enumerate() {
            let len = right_lengths[r];
            if len == 0 || len > n_left || len > list.len() {
                return Err(Error::Profile(format!(
                    "right agent {r} has acceptable length {len} (list holds {}, {} left agents)",
                    list.len(),
                    n_left
                )));
            }
            let mut seen = vec![false; n_left];
            for (pos, &l) in list.iter().enumerate() {
                if l >= n_left {
                    return Err(Error::Profile(format!(
                        "right agent {r} ranks left agent {l}, only {n_left} exist"
                    )));
                }
                if std::mem::replace(&mut seen[l], true) {
                    return Err(Error::Profile(format!(
                        "right agent {r} ranks left agent {l} twice"
                    )));
                }
                if pos < len {
                    right_rank[r * n_left + l] = pos as u32;
                }
            }
        }

        Ok(Self {
            n_left,
            n_right,
            left_lists,
            right_lists,
            right_lengths,
            left_rank,
            right_rank,
        })
    }

    /// Profile where every list is acceptable in full.
    pub fn complete(left_lists: Vec<Vec<usize>>, right_lists: Vec<Vec<usize>>) -> Result<Self> {
        let (n_left, n_right) = (left_lists.len(), right_lists.len());
        Self::new(n_left, n_right, left_lists, right_lists, None)
    }

    /// Same lists, new acceptable prefix lengths.
    pub fn with_lengths(&self, right_lengths: Vec<usize>) -> Result<Self> {
        Self::new(
            self.n_left,
            self.n_right,
            self.left_lists.clone(),
            self.right_lists.clone(),
            Some(right_lengths),
        )
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn left_lists(&self) -> &[Vec<usize>] {
        &self.left_lists
    }

    pub fn right_lists(&self) -> &[Vec<usize>] {
        &self.right_lists
    }

    pub fn right_lengths(&self) -> &[usize] {
        &self.right_lengths
    }

    /// True when every right agent accepts all left agents and every left
    /// agent ranks all right agents.
    pub fn is_complete(&self) -> bool {
        self.right_lengths.iter().all(|&r| r == self.n_left)
            && self.left_lists.iter().all(|l| l.len() == self.n_right)
    }

    /// Position of `right` on `left`'s list.
    pub fn left_rank(&self, left: usize, right: usize) -> Option<usize> {
        let v = self.left_rank[left * self.n_right + right];
        (v != NOT_RANKED).then_some(v as usize)
    }

    /// Position of `left` within the acceptable prefix of `right`'s list.
    pub fn right_rank(&self, right: usize, left: usize) -> Option<usize> {
        let v = self.right_rank[right * self.n_left + left];
        (v != NOT_RANKED).then_some(v as usize)
    }

    /// Both agents appear on each other's (acceptable) lists.
    pub fn acceptable(&self, left: usize, right: usize) -> bool {
        self.left_rank(left, right).is_some() && self.right_rank(right, left).is_some()
    }

    fn check_left(&self, l: usize) -> Result<()> {
        if l >= self.n_left {
            return Err(Error::Contract(format!(
                "left index {l} out of range (n_left = {})",
                self.n_left
            )));
        }
        Ok(())
    }

    fn check_right(&self, r: usize) -> Result<()> {
        if r >= self.n_right {
            return Err(Error::Contract(format!(
                "right index {r} out of range (n_right = {})",
                self.n_right
            )));
        }
        Ok(())
    }
}

/// A set of `(left, right)` assignments kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Self { pairs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, left: usize, right: usize) -> bool {
        self.pairs.binary_search(&(left, right)).is_ok()
    }

    /// Right agents assigned to `left`, in ascending index order.
    pub fn rights_of(&self, left: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.pairs.partition_point(|&(l, _)| l < left);
        self.pairs[start..]
            .iter()
            .take_while(move |&&(l, _)| l == left)
            .map(|&(_, r)| r)
    }

    /// The left agent holding `right`, if any.
    pub fn left_of(&self, right: usize) -> Option<usize> {
        self.pairs
            .iter()
            .find(|&&(_, r)| r == right)
            .map(|&(l, _)| l)
    }

    /// Per right agent, its left partner.
    pub fn right_partners(&self, n_right: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n_right];
        for &(l, r) in &self.pairs {
            out[r] = Some(l);
        }
        out
    }

    /// Per left agent, every right agent it holds.
    pub fn left_partners(&self, n_left: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n_left];
        for &(l, r) in &self.pairs {
            out[l].push(r);
        }
        out
    }
}

/// Which stability definition applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    OneOne,
    /// Right agents hold one partner each; the total pair count is capped by
    /// a single quota shared by all left agents.
    ManyOne {
        quota: usize,
    },
}

/// Mutable state of a left-proposing deferred acceptance run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProposalState {
    /// Left agents still looking for a partner.
    pub unmatched: Vec<usize>,
    pub left_partner: Vec<Option<usize>>,
    pub right_partner: Vec<Option<usize>>,
}

impl ProposalState {
    /// Everyone unmatched.
    pub fn new(n_left: usize, n_right: usize) -> Self {
        Self {
            unmatched: (0..n_left).collect(),
            left_partner: vec![None; n_left],
            right_partner: vec![None; n_right],
        }
    }

    pub fn matching(&self) -> Matching {
        Matching::new(
            self.right_partner
                .iter()
                .enumerate()
                .filter_map(|(r, l)| l.map(|l| (l, r)))
                .collect(),
        )
    }
}

/// What happened to a single proposal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProposalOutcome {
    /// The right agent was free.
    Accepted,
    /// The right agent traded up; `displaced` went back to the unmatched pool.
    Replaced { displaced: usize },
    /// The right agent kept its current partner.
    Rejected,
}

/// One deferred acceptance step: left agent `p` proposes to right agent `x`.
pub fn deferred_acceptance_step(
    p: usize,
    x: usize,
    state: &mut ProposalState,
    profile: &PreferenceProfile,
) -> Result<ProposalOutcome> {
    profile.check_left(p)?;
    profile.check_right(x)?;
    if state.left_partner.len() != profile.n_left || state.right_partner.len() != profile.n_right {
        return Err(Error::Contract(
            "proposal state does not fit the profile".into(),
        ));
    }
    let pos = state
        .unmatched
        .iter()
        .position(|&u| u == p)
        .ok_or_else(|| Error::Contract(format!("left agent {p} is already matched")))?;
    if !profile.acceptable(p, x) {
        return Err(Error::Contract(format!(
            "right agent {x} is not acceptable to left agent {p}"
        )));
    }
    Ok(propose(profile, state, pos, x))
}

// `pos` indexes the proposer inside `state.unmatched`; acceptability is the
// caller's responsibility.
fn propose(
    profile: &PreferenceProfile,
    state: &mut ProposalState,
    pos: usize,
    x: usize,
) -> ProposalOutcome {
    let p = state.unmatched[pos];
    match state.right_partner[x] {
        None => {
            state.right_partner[x] = Some(p);
            state.left_partner[p] = Some(x);
            state.unmatched.swap_remove(pos);
            ProposalOutcome::Accepted
        }
        Some(current) => {
            let new_rank = profile.right_rank[x * profile.n_left + p];
            let cur_rank = profile.right_rank[x * profile.n_left + current];
            if new_rank < cur_rank {
                state.right_partner[x] = Some(p);
                state.left_partner[p] = Some(x);
                state.left_partner[current] = None;
                // p leaves the pool, current takes its slot
                state.unmatched[pos] = current;
                ProposalOutcome::Replaced { displaced: current }
            } else {
                ProposalOutcome::Rejected
            }
        }
    }
}

/// Stable one-one matching with complete lists; returns the matching and the
/// number of proposals made.
pub fn stable_match_complete_counted<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    rng: &mut R,
) -> Result<(Matching, usize)> {
    if !profile.is_complete() {
        return Err(Error::Contract(
            "complete-list matching called with incomplete preference lists".into(),
        ));
    }
    if profile.n_left > profile.n_right {
        return Err(Error::Contract(format!(
            "{} left agents cannot all be matched to {} right agents",
            profile.n_left, profile.n_right
        )));
    }
    let mut state = ProposalState::new(profile.n_left, profile.n_right);
    let mut next = vec![0usize; profile.n_left];
    let mut proposals = 0usize;
    while !state.unmatched.is_empty() {
        let pos = rng.gen_range(0..state.unmatched.len());
        let p = state.unmatched[pos];
        let x = profile.left_lists[p][next[p]];
        next[p] += 1;
        proposals += 1;
        propose(profile, &mut state, pos, x);
    }
    Ok((state.matching(), proposals))
}

/// Stable one-one matching when every agent ranks the whole other side.
pub fn stable_match_complete<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    rng: &mut R,
) -> Result<Matching> {
    stable_match_complete_counted(profile, rng).map(|(m, _)| m)
}

/// Stable one-one matching with incomplete lists; returns the matching and
/// the number of proposals made.
pub fn stable_match_incomplete_counted<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    rng: &mut R,
) -> Result<(Matching, usize)> {
    let mut state = ProposalState::new(profile.n_left, profile.n_right);
    let mut next = vec![0usize; profile.n_left];
    let mut proposals = 0usize;
    while !state.unmatched.is_empty() {
        let pos = rng.gen_range(0..state.unmatched.len());
        let p = state.unmatched[pos];
        let list = &profile.left_lists[p];
        if next[p] == list.len() {
            state.unmatched.swap_remove(pos);
            continue;
        }
        let x = list[next[p]];
        next[p] += 1;
        proposals += 1;
        if profile.right_rank(x, p).is_some() {
            propose(profile, &mut state, pos, x);
        }
    }
    Ok((state.matching(), proposals))
}

/// Stable one-one matching where right agent `i` only accepts the first
/// `r^i` entries of its list. Left agents that run out of acceptable partners
/// stay unmatched.
pub fn stable_match_incomplete<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    rng: &mut R,
) -> Result<Matching> {
    stable_match_incomplete_counted(profile, rng).map(|(m, _)| m)
}

// Assignments of one left agent in the many-one engine: a max-heap keyed by
// the left agent's rank of each held right agent.
#[derive(Debug, Default, Clone)]
struct Holdings {
    heap: BinaryHeap<(u32, usize)>,
}

impl Holdings {
    fn key(&self, left: usize) -> Option<(usize, u32, usize)> {
        self.heap
            .peek()
            .map(|&(worst, _)| (self.heap.len(), worst, left))
    }
}

/// Many-one matching with a common quota; returns the matching and the
/// number of proposals made.
pub fn many_one_match_counted<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    quota: usize,
    rng: &mut R,
) -> Result<(Matching, usize)> {
    if quota == 0 {
        return Err(Error::Contract("common quota must be at least 1".into()));
    }
    let n_left = profile.n_left;
    let mut next = vec![0usize; profile.n_right];
    let mut free: Vec<usize> = (0..profile.n_right).collect();
    let mut held: Vec<Holdings> = vec![Holdings::default(); n_left];
    // (load, worst rank, left) for every left agent holding something
    let mut order: BTreeSet<(usize, u32, usize)> = BTreeSet::new();
    let mut total = 0usize;
    let mut proposals = 0usize;

    while !free.is_empty() {
        let pos = rng.gen_range(0..free.len());
        let x = free[pos];
        let len = profile.right_lengths[x];
        if next[x] == len {
            free.swap_remove(pos);
            continue;
        }
        let p = profile.right_lists[x][next[x]];
        next[x] += 1;
        proposals += 1;
        let Some(rank) = profile.left_rank(p, x) else {
            continue;
        };

        free.swap_remove(pos);
        if let Some(k) = held[p].key(p) {
            order.remove(&k);
        }
        held[p].heap.push((rank as u32, x));
        order.insert(held[p].key(p).expect("just pushed"));
        total += 1;

        if total > quota {
            // largest load first, then the worst-ranked least preferred member
            let &(load, worst, _) = order.last().expect("non-empty when over quota");
            let tied: Vec<usize> = order
                .range((load, worst, 0)..=(load, worst, usize::MAX))
                .map(|&(_, _, l)| l)
                .collect();
            let victim = tied[rng.gen_range(0..tied.len())];
            order.remove(&(load, worst, victim));
            let (_, released) = held[victim].heap.pop().expect("victim holds something");
            if let Some(k) = held[victim].key(victim) {
                order.insert(k);
            }
            total -= 1;
            free.push(released);
        }
    }

    let pairs = held
        .iter()
        .enumerate()
        .flat_map(|(l, h)| h.heap.iter().map(move |&(_, r)| (l, r)))
        .collect();
    Ok((Matching::new(pairs), proposals))
}

/// Right-proposing many-one matching. Each right agent ends with at most one
/// left partner, left agents may hold several, and at most `quota` pairs
/// survive. Whenever the quota is exceeded, the most loaded left agent (ties:
/// the one whose least preferred member ranks worst, then random) releases
/// its least preferred member, which resumes proposing.
pub fn many_one_match<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    quota: usize,
    rng: &mut R,
) -> Result<Matching> {
    many_one_match_counted(profile, quota, rng).map(|(m, _)| m)
}

/// Every `(left, right)` pair that blocks `matching` under `mode`. An empty
/// result means the matching is stable.
///
/// One-one: an acceptable unmatched pair blocks when both sides are free or
/// prefer each other to their partners. Many-one: the right agent must be free
/// or prefer the left agent, and the left agent must either see the common
/// quota unfilled or prefer the right agent to one of its current members.
pub fn verify_stability(
    profile: &PreferenceProfile,
    matching: &Matching,
    mode: MatchMode,
) -> Vec<(usize, usize)> {
    let right_partner = matching.right_partners(profile.n_right);
    let left_partners = matching.left_partners(profile.n_left);
    let mut blocking = Vec::new();
    for p in 0..profile.n_left {
        let worst_held = left_partners[p]
            .iter()
            .filter_map(|&r| profile.left_rank(p, r))
            .max();
        for x in 0..profile.n_right {
            if !profile.acceptable(p, x) || right_partner[x] == Some(p) {
                continue;
            }
            let right_wants = match right_partner[x] {
                None => true,
                Some(cur) => match (profile.right_rank(x, p), profile.right_rank(x, cur)) {
                    (Some(a), Some(b)) => a < b,
                    (Some(_), None) => true,
                    _ => false,
                },
            };
            if !right_wants {
                continue;
            }
            let rank_px = profile.left_rank(p, x).expect("acceptable");
            let left_wants = match mode {
                MatchMode::OneOne => match worst_held {
                    None => true,
                    Some(cur) => rank_px < cur,
                },
                MatchMode::ManyOne { quota } => {
                    matching.len() < quota || worst_held.is_some_and(|w| rank_px < w)
                }
            };
            if left_wants {
                blocking.push((p, x));
            }
        }
    }
    blocking
}
