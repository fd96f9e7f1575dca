//! Two-server symmetric private information retrieval over F_2.
//!
//! Both servers hold files `W_1..W_K ∈ F_2^ℓ` and a shared one-time pad `S`.
//! The user draws a uniform `q1 ∈ F_2^K` and sends `q2 = q1 ⊕ 1_θ`. Server
//! `i` answers `X_i = (⊕_{j: q_i[j] = 1} W_j) ⊕ S`, so `X_1 ⊕ X_2 = W_θ`.
//! Each server sees a uniform query, and each answer alone is padded by `S`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Tally, Transport};
use crate::field::{FpVector, PrimeField};
use crate::numerics::{chi_square_homogeneity, chi_square_uniform, ChiSquare};
use crate::{stream_rng, Error, Result, Rng};

const F2: PrimeField = PrimeField::BINARY;

/// Smallest p-value the audit accepts.
pub const AUDIT_P_MIN: f64 = 1e-3;

/// What reached the user in the download phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Received {
    /// Both answers separately (noiseless transport).
    Separate { x1: FpVector, x2: FpVector },
    /// Only the decoded sum (COMP transport).
    Sum(FpVector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserView {
    pub theta: usize,
    pub q1: FpVector,
    pub q2: FpVector,
    pub received: Received,
}

/// Record of one retrieval. `theta` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpirTranscript {
    pub k_files: usize,
    pub file_len: usize,
    pub theta: usize,
    pub files: Vec<FpVector>,
    pub shared_s: FpVector,
    pub q1: FpVector,
    pub q2: FpVector,
    pub x1: FpVector,
    pub x2: FpVector,
    pub decoded: FpVector,
    pub user_view: UserView,
}

impl SpirTranscript {
    /// What server 1 observes from the user.
    pub fn server1_view(&self) -> &FpVector {
        &self.q1
    }

    pub fn server2_view(&self) -> &FpVector {
        &self.q2
    }

    pub fn succeeded(&self) -> bool {
        self.decoded == self.files[self.theta - 1]
    }

    /// Query and answer identities that hold on every run by construction.
    pub fn identities_hold(&self) -> bool {
        let flip = (0..self.k_files).all(|j| {
            let d = self.q1.coords()[j] ^ self.q2.coords()[j];
            d == u32::from(j + 1 == self.theta)
        });
        let pad = self.x1.add(&self.x2).is_ok_and(|s| s == self.files[self.theta - 1]);
        flip && pad
    }
}

/// Fixed database served across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpirSession {
    files: Vec<FpVector>,
    file_len: usize,
}

impl SpirSession {
    pub fn new(files: Vec<FpVector>) -> Result<Self> {
        let file_len =
            files.first().map(FpVector::len).ok_or_else(|| crate::error::invalid("need at least one file"))?;
        if file_len == 0 {
            return Err(crate::error::invalid("files must be non-empty"));
        }
        for f in &files {
            if f.field() != F2 {
                return Err(crate::error::invalid("files must be binary"));
            }
            if f.len() != file_len {
                return Err(Error::LengthMismatch { expected: file_len, found: f.len() });
            }
        }
        Ok(Self { files, file_len })
    }

    /// Uniform files from stream `(seed, 0)`.
    pub fn random(k_files: usize, file_len: usize, seed: u64) -> Result<Self> {
        let mut rng = stream_rng(seed, 0);
        Self::new((0..k_files).map(|_| FpVector::random(F2, file_len, &mut rng)).collect())
    }

    pub fn files(&self) -> &[FpVector] {
        &self.files
    }

    pub fn k_files(&self) -> usize {
        self.files.len()
    }

    pub fn file_len(&self) -> usize {
        self.file_len
    }

    /// One retrieval of file `theta` with randomness from `(seed, 1)`.
    pub fn run(&self, theta: usize, transport: &Transport, seed: u64) -> Result<SpirTranscript> {
        self.run_with(theta, transport, &mut stream_rng(seed, 1))
    }

    pub fn run_with(&self, theta: usize, transport: &Transport, rng: &mut Rng) -> Result<SpirTranscript> {
        let k = self.k_files();
        if theta == 0 || theta > k {
            return Err(crate::error::invalid(alloc::format!("theta must lie in 1..={k}, got {theta}")));
        }
        transport.check_len(self.file_len)?;
        // upload
        let q1 = FpVector::random(F2, k, rng);
        let mut flip = alloc::vec![0u32; k];
        flip[theta - 1] = 1;
        let q2 = q1.add(&FpVector::new(F2, flip))?;
        // download
        let shared_s = FpVector::random(F2, self.file_len, rng);
        let x1 = self.answer(&q1, &shared_s)?;
        let x2 = self.answer(&q2, &shared_s)?;
        // decode
        let (decoded, received) = match transport {
            Transport::Noiseless => (x1.add(&x2)?, Received::Separate { x1: x1.clone(), x2: x2.clone() }),
            Transport::Comp(_) => {
                let sum = transport.deliver_sum(&x1, &x2, rng)?;
                (sum.clone(), Received::Sum(sum))
            }
        };
        let user_view = UserView { theta, q1: q1.clone(), q2: q2.clone(), received };
        Ok(SpirTranscript {
            k_files: k,
            file_len: self.file_len,
            theta,
            files: self.files.clone(),
            shared_s,
            q1,
            q2,
            x1,
            x2,
            decoded,
            user_view,
        })
    }

    /// `(⊕_{j: q[j] = 1} W_j) ⊕ s`.
    fn answer(&self, q: &FpVector, s: &FpVector) -> Result<FpVector> {
        self.files.iter().zip(q.coords()).filter(|(_, &bit)| bit == 1).try_fold(s.clone(), |acc, (w, _)| acc.add(w))
    }

    /// `runs` retrievals with `theta` cycling through `1..=K`; run `r` uses
    /// stream `(seed, r + 1)`.
    pub fn batch(&self, runs: usize, transport: &Transport, seed: u64) -> Result<(Vec<SpirTranscript>, Tally)> {
        if runs == 0 {
            return Err(crate::error::invalid("need at least one run"));
        }
        let mut out = Vec::with_capacity(runs);
        for r in 0..runs {
            let theta = r % self.k_files() + 1;
            out.push(self.run_with(theta, transport, &mut stream_rng(seed, r as u64 + 1))?);
        }
        let ok = out.iter().filter(|t| t.succeeded()).count();
        Ok((out, Tally::new(runs, ok)))
    }
}

/// Single retrieval over a fresh random database.
pub fn spir_run(
    k_files: usize,
    file_len: usize,
    theta: usize,
    transport: &Transport,
    seed: u64,
) -> Result<SpirTranscript> {
    SpirSession::random(k_files, file_len, seed)?.run(theta, transport, seed)
}

/// Uniformity test of one server's queries for one `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryCheck {
    pub server: usize,
    pub theta: usize,
    pub test: ChiSquare,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpirAudit {
    pub runs: usize,
    /// Runs where the per-run identities failed (always zero for honest runs).
    pub identity_failures: usize,
    pub query_uniformity: Vec<QueryCheck>,
    /// Homogeneity of each server's query law across `theta`.
    pub query_theta_independence: [ChiSquare; 2],
    /// Uniformity of `X_1` and of `X_2` for the fixed database.
    pub answer_uniformity: [ChiSquare; 2],
    /// Exact enumeration of query laws, when `K ≤ 4`.
    pub exact_query_privacy: Option<bool>,
}

impl SpirAudit {
    pub fn min_p_value(&self) -> f64 {
        self.query_uniformity
            .iter()
            .map(|c| c.test.p_value)
            .chain(self.query_theta_independence.iter().map(|c| c.p_value))
            .chain(self.answer_uniformity.iter().map(|c| c.p_value))
            .fold(1.0, f64::min)
    }

    pub fn passes(&self) -> bool {
        self.identity_failures == 0 && self.min_p_value() > AUDIT_P_MIN && self.exact_query_privacy != Some(false)
    }
}

fn bits_index(v: &FpVector) -> usize {
    v.coords().iter().fold(0usize, |acc, &c| acc << 1 | c as usize)
}

/// Statistical privacy audit of runs over one database.
pub fn spir_privacy_audit(runs: &[SpirTranscript]) -> Result<SpirAudit> {
    let first = runs.first().ok_or_else(|| crate::error::invalid("audit needs runs"))?;
    let (k, ell) = (first.k_files, first.file_len);
    if runs.iter().any(|t| t.files != first.files) {
        return Err(crate::error::invalid("audit needs every run over the same files"));
    }
    if k > 16 || ell > 16 {
        return Err(crate::error::invalid("audit tables are limited to 16-bit queries and answers"));
    }
    let identity_failures = runs.iter().filter(|t| !t.identities_hold()).count();

    // theta -> [server][query index] counts
    let mut by_theta: BTreeMap<usize, [Vec<u64>; 2]> = BTreeMap::new();
    let mut answers = [alloc::vec![0u64; 1 << ell], alloc::vec![0u64; 1 << ell]];
    for t in runs {
        let counts = by_theta.entry(t.theta).or_insert_with(|| [alloc::vec![0u64; 1 << k], alloc::vec![0u64; 1 << k]]);
        counts[0][bits_index(&t.q1)] += 1;
        counts[1][bits_index(&t.q2)] += 1;
        answers[0][bits_index(&t.x1)] += 1;
        answers[1][bits_index(&t.x2)] += 1;
    }
    let mut query_uniformity = Vec::new();
    for (&theta, counts) in &by_theta {
        for (server, c) in counts.iter().enumerate() {
            query_uniformity.push(QueryCheck { server: server + 1, theta, test: chi_square_uniform(c)? });
        }
    }
    let homogeneity = |server: usize| -> Result<ChiSquare> {
        let table: Vec<Vec<u64>> = by_theta.values().map(|c| c[server].clone()).collect();
        if table.len() < 2 {
            // a single theta: identical by definition
            return Ok(ChiSquare { statistic: 0.0, dof: 0, p_value: 1.0 });
        }
        chi_square_homogeneity(&table)
    };
    Ok(SpirAudit {
        runs: runs.len(),
        identity_failures,
        query_uniformity,
        query_theta_independence: [homogeneity(0)?, homogeneity(1)?],
        answer_uniformity: [chi_square_uniform(&answers[0])?, chi_square_uniform(&answers[1])?],
        exact_query_privacy: (k <= 4).then(|| exact_query_privacy(k)),
    })
}

/// Enumerates every `q1`: for each `theta`, both servers' query laws are
/// exactly uniform on F_2^K (hence identical across `theta`).
pub fn exact_query_privacy(k_files: usize) -> bool {
    let cells = 1usize << k_files;
    (1..=k_files).all(|theta| {
        let mut counts = [alloc::vec![0u32; cells], alloc::vec![0u32; cells]];
        for q1 in 0..cells {
            // coordinate θ-1 sits at bit K-θ in the most-significant-first index
            let q2 = q1 ^ (1 << (k_files - theta));
            counts[0][q1] += 1;
            counts[1][q2] += 1;
        }
        counts.iter().all(|c| c.iter().all(|&n| n == 1))
    })
}

/// `(q1, q2, x1, x2)` as seen by the user.
type UserTuple = (Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>);

/// Exhaustive database-privacy check: for every `theta` and every pair of
/// databases agreeing on `W_θ`, the user's views over all `(q1, S)` have the
/// same multiset, and decoding returns `W_θ`.
pub fn exhaustive_database_privacy(k_files: usize, file_len: usize) -> Result<bool> {
    if k_files == 0 || k_files > 3 || file_len == 0 || file_len > 3 {
        return Err(crate::error::invalid("exhaustive check needs 1 <= K <= 3 and 1 <= ell <= 3"));
    }
    for theta in 1..=k_files {
        let mut by_target: BTreeMap<Vec<u32>, Vec<UserTuple>> = BTreeMap::new();
        for db in FpVector::enumerate(F2, k_files * file_len) {
            let files: Vec<FpVector> = db.coords().chunks(file_len).map(|c| FpVector::new(F2, c.to_vec())).collect();
            let session = SpirSession::new(files)?;
            let mut views = Vec::new();
            for q1 in FpVector::enumerate(F2, k_files) {
                let mut flip = alloc::vec![0u32; k_files];
                flip[theta - 1] = 1;
                let q2 = q1.add(&FpVector::new(F2, flip))?;
                for s in FpVector::enumerate(F2, file_len) {
                    let x1 = session.answer(&q1, &s)?;
                    let x2 = session.answer(&q2, &s)?;
                    if x1.add(&x2)? != session.files[theta - 1] {
                        return Ok(false);
                    }
                    views.push((
                        q1.coords().to_vec(),
                        q2.coords().to_vec(),
                        x1.coords().to_vec(),
                        x2.coords().to_vec(),
                    ));
                }
            }
            views.sort();
            let target = session.files[theta - 1].coords().to_vec();
            match by_target.get(&target) {
                Some(reference) if reference != &views => return Ok(false),
                Some(_) => {}
                None => {
                    by_target.insert(target, views);
                }
            }
        }
    }
    Ok(true)
}

/// Two colluding servers learn `theta` exactly: `q1 ⊕ q2` is its indicator.
pub fn colluding_servers_learn_theta(q1: &FpVector, q2: &FpVector) -> Option<usize> {
    let diff = q1.add(q2).ok()?;
    let ones: Vec<usize> = diff.coords().iter().enumerate().filter(|(_, &c)| c == 1).map(|(j, _)| j + 1).collect();
    match ones.as_slice() {
        [theta] => Some(*theta),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(v: &[u32]) -> FpVector {
        FpVector::new(F2, v.to_vec())
    }

    #[test]
    fn worked_example() {
        let session = SpirSession::random(3, 4, 5).unwrap();
        let mut found = false;
        for seed in 0..64 {
            let t = session.run(2, &Transport::Noiseless, seed).unwrap();
            if t.q1 == bits(&[1, 0, 1]) {
                assert_eq!(t.q2, bits(&[1, 1, 1]));
                assert_eq!(t.x1.add(&t.x2).unwrap(), session.files()[1]);
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn single_file_always_decodes() {
        let session = SpirSession::random(1, 6, 2).unwrap();
        let (runs, tally) = session.batch(50, &Transport::Noiseless, 3).unwrap();
        assert_eq!(tally.successes, 50);
        assert!(runs.iter().all(SpirTranscript::identities_hold));
    }

    #[test]
    fn validates_theta_and_lengths() {
        let session = SpirSession::random(3, 4, 0).unwrap();
        assert!(session.run(0, &Transport::Noiseless, 0).is_err());
        assert!(session.run(4, &Transport::Noiseless, 0).is_err());
        assert!(SpirSession::new(alloc::vec![bits(&[1, 0]), bits(&[1])]).is_err());
        assert!(SpirSession::new(Vec::new()).is_err());
        let link = super::super::CompLink::new(crate::channels::Measurement::OnOff, 1.0, 3, 6, 0).unwrap();
        assert!(session.run(1, &Transport::Comp(link), 0).is_err());
    }

    #[test]
    fn user_view_hides_answers_under_comp() {
        let link = super::super::CompLink::new(crate::channels::Measurement::OnOff, 50.0, 4, 8, 0).unwrap();
        let session = SpirSession::random(3, 4, 1).unwrap();
        let t = session.run(3, &Transport::Comp(link), 7).unwrap();
        assert!(matches!(t.user_view.received, Received::Sum(_)));
        assert!(t.succeeded() && t.identities_hold());
    }

    #[test]
    fn exact_enumerations() {
        for k in 1..=4 {
            assert!(exact_query_privacy(k));
        }
        assert!(exhaustive_database_privacy(2, 1).unwrap());
        assert!(exhaustive_database_privacy(3, 4).is_err());
    }

    #[test]
    fn collusion_reveals_theta() {
        let session = SpirSession::random(4, 3, 0).unwrap();
        for theta in 1..=4 {
            let t = session.run(theta, &Transport::Noiseless, theta as u64).unwrap();
            assert_eq!(colluding_servers_learn_theta(&t.q1, &t.q2), Some(theta));
        }
        assert_eq!(colluding_servers_learn_theta(&bits(&[1, 1]), &bits(&[0, 0])), None);
    }

    #[test]
    fn audit_flags_a_leaky_server() {
        let session = SpirSession::random(2, 3, 0).unwrap();
        let (mut runs, _) = session.batch(2000, &Transport::Noiseless, 1).unwrap();
        // a broken client that always sends q1 = 0
        for t in runs.iter_mut() {
            t.q1 = bits(&[0, 0]);
        }
        assert!(!spir_privacy_audit(&runs).unwrap().passes());
    }

    #[test]
    fn audit_requires_samples_and_one_database() {
        let a = SpirSession::random(3, 3, 0).unwrap().run(1, &Transport::Noiseless, 0).unwrap();
        assert!(matches!(spir_privacy_audit(core::slice::from_ref(&a)), Err(Error::InsufficientSamples { .. })));
        let b = SpirSession::random(3, 3, 1).unwrap().run(1, &Transport::Noiseless, 0).unwrap();
        assert!(spir_privacy_audit(&[a, b]).is_err());
    }
}
