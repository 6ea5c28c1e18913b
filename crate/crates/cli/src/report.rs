//! Reports printed by the subcommands. Each report serializes to JSON and
//! renders to text from the same fields.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::input::MatrixJson;

pub trait Render: Serialize {
    fn text(&self) -> String;

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HsReport {
    pub f: String,
    pub n: u32,
    pub components: Vec<String>,
}

impl Render for HsReport {
    fn text(&self) -> String {
        self.components.iter().enumerate().map(|(k, d)| format!("d_{k} = {d}\n")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub base: u32,
    pub j: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationJson {
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl Render for CommutationJson {
    fn text(&self) -> String {
        match &self.counterexample {
            None => format!("commutation identities: passed ({} checked)\n", self.checked),
            Some(c) => format!(
                "commutation identities: FAILED ({} checked); first failure at x{}, j = {}, k = {}\n",
                self.checked, c.base, c.j, c.k
            ),
        }
    }
}

impl Render for MatrixJson {
    fn text(&self) -> String {
        self.entries.iter().map(|r| format!("[{}]\n", r.join(", "))).collect()
    }

    fn json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("matrices serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdbdJson {
    pub passed: bool,
    pub n: u32,
    pub block_rows: usize,
    pub block_cols: usize,
    pub permutation: String,
    pub mismatch: Option<[usize; 2]>,
}

impl Render for FdbdJson {
    fn text(&self) -> String {
        let mut s = String::new();
        let status = if self.passed { "passed" } else { "FAILED" };
        let _ = writeln!(s, "D_{n}(Jac(f)) vs Jacobian of d_0..d_{n}: {status}", n = self.n);
        let _ = writeln!(s, "permutation: {}", self.permutation);
        if let Some([r, c]) = self.mismatch {
            let _ = writeln!(s, "first mismatch at row {r}, column {c}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetEquationsJson {
    pub f: String,
    pub n: u32,
    pub s: u32,
    pub equations: Vec<String>,
    pub expected_dimension: u32,
}

impl Render for JetEquationsJson {
    fn text(&self) -> String {
        let mut s: String = self.equations.iter().enumerate().map(|(k, d)| format!("d_{k}(f) = {d}\n")).collect();
        let _ = writeln!(s, "expected dimension: {}", self.expected_dimension);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankJson {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub point: Vec<String>,
}

impl Render for RankJson {
    fn text(&self) -> String {
        format!("rank {} ({}x{} matrix at {})\n", self.rank, self.rows, self.cols, self.point.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorJson {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorsJson {
    pub k: usize,
    pub count: usize,
    pub all_zero: bool,
    pub minors: Vec<MinorJson>,
}

impl Render for MinorsJson {
    fn text(&self) -> String {
        let mut s = format!("{} minors of size {}\n", self.count, self.k);
        for m in &self.minors {
            let _ = writeln!(s, "rows {} cols {}: {}", join(&m.rows), join(&m.cols), m.value);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericRankJson {
    pub rank: usize,
    pub qualifier: String,
    pub seed: u64,
    pub trials: usize,
    pub per_trial: Vec<usize>,
}

impl Render for GenericRankJson {
    fn text(&self) -> String {
        format!(
            "rank {} ({}; seed {}, {} trials; per trial {})\n",
            self.rank,
            self.qualifier,
            self.seed,
            self.trials,
            join(&self.per_trial)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularJson {
    pub rank: usize,
    pub bound: usize,
    pub full: bool,
    pub classical_rank: usize,
    pub classical_expected: usize,
    pub n: u32,
    pub m: u32,
    pub assumptions: Vec<String>,
    pub verdict: String,
}

impl Render for SingularJson {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "rank D_{}(Jac_{}(f)) = {} (bound {}, full: {})", self.n, self.m, self.rank, self.bound, self.full);
        let _ = writeln!(s, "rank Jac(d_0..d_{}) = {} (expected {})", self.n, self.classical_rank, self.classical_expected);
        for a in &self.assumptions {
            let _ = writeln!(s, "assumption: {a}");
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleJson {
    pub point: Vec<String>,
    pub rank: usize,
    pub cokernel_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub point: Vec<String>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NobileJson {
    pub f: String,
    pub field: String,
    pub n: u32,
    pub m: u32,
    pub base: Vec<String>,
    pub zero_jet: Vec<String>,
    pub membership: bool,
    /// Rank at the zero jet.
    pub rank: usize,
    pub bound: usize,
    pub full: bool,
    pub rank_deficient: bool,
    /// Cokernel rank at the generic sampled jet.
    pub cokernel_rank: usize,
    pub expected: usize,
    pub cokernel_match: bool,
    pub samples: Vec<SampleJson>,
    pub rank_jump: Option<WitnessJson>,
    pub seed: u64,
    pub trials: usize,
    pub assumptions: Vec<String>,
    pub verdict: String,
}

impl Render for NobileJson {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "f = {} over {}, n = {}, m = {}", self.f, self.field, self.n, self.m);
        let _ = writeln!(s, "zero jet {} on J_{}(X): {}", self.zero_jet.join(","), self.n, self.membership);
        let _ = writeln!(
            s,
            "rank at zero jet: {} (bound {}, full: {}, deficient: {})",
            self.rank, self.bound, self.full, self.rank_deficient
        );
        let _ = writeln!(
            s,
            "cokernel rank over {} smooth jets (seed {}): {} (expected {}, all match: {})",
            self.trials, self.seed, self.cokernel_rank, self.expected, self.cokernel_match
        );
        match &self.rank_jump {
            Some(w) => {
                let _ = writeln!(
                    s,
                    "evidence of rank jump: minor rows {} cols {} equals {} at {}",
                    join(&w.rows),
                    join(&w.cols),
                    w.value,
                    w.point.join(",")
                );
            }
            None => {
                let _ = writeln!(s, "evidence of rank jump: none found");
            }
        }
        for a in &self.assumptions {
            let _ = writeln!(s, "assumption: {a}");
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankComparisonJson {
    pub n: u32,
    pub m: u32,
    pub jet_ring_rank: usize,
    pub tensor_rank: usize,
    pub isomorphic: bool,
    pub verdict: String,
}

impl Render for RankComparisonJson {
    fn text(&self) -> String {
        format!(
            "A = K[x], n = {}, m = {}: rank Omega^({m})_(A_{n}) = {}, rank Omega^({m})_A (x) B_{n} = {}: {}\n",
            self.n,
            self.m,
            self.jet_ring_rank,
            self.tensor_rank,
            self.verdict,
            m = self.m,
            n = self.n
        )
    }
}
