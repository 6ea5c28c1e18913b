//! One function per subcommand, each returning the text to print.

use jetdiff_core::hasse::check_commutation;
use jetdiff_core::jetscheme::{
    classical_rank_test, higher_rank_test, jet_equations, nobile_certificate, rank_comparison, IRREDUCIBILITY_ASSUMPTION,
};
use jetdiff_core::linalg::{eval_matrix, generic_rank, minors_with_cap, GenericRank};
use jetdiff_core::{check_fdbd, dn_matrix, hs_components, jac_m, rank, FieldElement};

use crate::input::{parse_csv, parse_matrix_spec, parse_one_poly, parse_point, parse_polys, MatrixJson};
use crate::report::*;
use crate::{Cli, CliError, Command};

fn strings(xs: &[FieldElement]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn emit<R: Render>(r: &R, json: bool) -> String {
    if json {
        r.json()
    } else {
        r.text()
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let g = &cli.global;
    let (field, s, json) = (g.field, g.s, g.json);
    let out = match &cli.command {
        Command::HsDerive { f, n } => {
            let p = parse_one_poly(f, s, field)?;
            let hs = hs_components(&p, *n)?;
            let components = hs.components.iter().map(ToString::to_string).collect();
            emit(&HsReport { f: p.to_string(), n: *n, components }, json)
        }
        Command::VerifyIdentities { f, n } => {
            let r = check_commutation(&parse_one_poly(f, s, field)?, *n)?;
            let counterexample = r.counterexample.map(|c| Counterexample { base: c.base, j: c.j, k: c.k });
            emit(&CommutationJson { passed: r.passed, checked: r.checked, counterexample }, json)
        }
        Command::Jacm { f, m } => {
            let fs = parse_polys(f, s, field)?;
            emit(&MatrixJson::from_matrix(&jac_m(&fs, *m)?), json)
        }
        Command::Dnl { f, n, m } => {
            let fs = parse_polys(f, s, field)?;
            emit(&MatrixJson::from_matrix(&dn_matrix(&jac_m(&fs, *m)?, *n)?), json)
        }
        Command::CheckFdbd { f, n } => {
            let r = check_fdbd(&parse_polys(f, s, field)?, *n)?;
            let report = FdbdJson {
                passed: r.passed,
                n: r.n,
                block_rows: r.permutation.block_rows,
                block_cols: r.permutation.block_cols,
                permutation: r.permutation.describe(),
                mismatch: r.mismatch.map(|(a, b)| [a, b]),
            };
            emit(&report, json)
        }
        Command::JetEquations { f, n } => {
            let d = jet_equations(&parse_one_poly(f, s, field)?, *n)?;
            let report = JetEquationsJson {
                f: d.f.to_string(),
                n: d.n,
                s: d.s,
                equations: d.equations.iter().map(ToString::to_string).collect(),
                expected_dimension: d.expected_dimension(),
            };
            emit(&report, json)
        }
        Command::RankAtPoint { matrix, point } => {
            let m = parse_matrix_spec(matrix, s, field)?;
            let p = parse_point(point, m.nvars(), field, "--point")?;
            let r = rank(&eval_matrix(&m, &p)?);
            let coords = parse_csv(point, field, "--point")?;
            emit(&RankJson { rank: r, rows: m.rows(), cols: m.cols(), point: strings(&coords) }, json)
        }
        Command::Minors { matrix, k, cap } => {
            let m = parse_matrix_spec(matrix, s, field)?;
            let set = minors_with_cap(&m, *k, *cap)?;
            let minors: Vec<MinorJson> = set
                .minors
                .iter()
                .map(|x| MinorJson { rows: x.rows.clone(), cols: x.cols.clone(), value: x.value.to_string() })
                .collect();
            emit(&MinorsJson { k: *k, count: minors.len(), all_zero: set.all_zero(), minors }, json)
        }
        Command::GenericRank { matrix } => {
            let m = parse_matrix_spec(matrix, s, field)?;
            let r = generic_rank(&m, g.trials, g.seed)?;
            let report = GenericRankJson {
                rank: r.rank,
                qualifier: GenericRank::QUALIFIER.into(),
                seed: r.seed,
                trials: r.trials,
                per_trial: r.per_trial,
            };
            emit(&report, json)
        }
        Command::SingularCheck { f, n, m, point } => {
            let p = parse_one_poly(f, s, field)?;
            let desc = jet_equations(&p, *n)?;
            let pt = parse_point(point, p.nvars(), field, "--point")?;
            let h = higher_rank_test(&desc, &pt, *m)?;
            let c = classical_rank_test(&desc, &pt)?;
            let verdict = if h.full {
                format!("non-singular point of J_{n}(X) (under stated assumptions)")
            } else {
                format!("singular point of J_{n}(X) (under stated assumptions)")
            };
            let report = SingularJson {
                rank: h.rank,
                bound: h.bound,
                full: h.full,
                classical_rank: c.rank,
                classical_expected: c.expected,
                n: *n,
                m: *m,
                assumptions: vec![IRREDUCIBILITY_ASSUMPTION.into()],
                verdict,
            };
            emit(&report, json)
        }
        Command::Nobile { f, n, m, base } => {
            let p = parse_one_poly(f, s, field)?;
            let b = parse_csv(base, field, "--base")?;
            let c = nobile_certificate(&p, *n, *m, &b, g.trials, g.seed)?;
            let samples = c
                .cokernel
                .samples
                .iter()
                .map(|x| SampleJson { point: strings(&x.point), rank: x.rank, cokernel_rank: x.cokernel_rank })
                .collect();
            let rank_jump = c.witness.as_ref().map(|w| WitnessJson {
                point: strings(&w.point),
                rows: w.rows.clone(),
                cols: w.cols.clone(),
                value: w.value.to_string(),
            });
            let report = NobileJson {
                f: p.to_string(),
                field: field.to_string(),
                n: c.n,
                m: c.m,
                base: strings(&c.base),
                zero_jet: strings(&c.zero_jet),
                membership: c.membership,
                rank: c.zero_jet_rank,
                bound: c.bound,
                full: c.zero_jet_rank == c.bound,
                rank_deficient: c.rank_deficient,
                cokernel_rank: c.cokernel.cokernel_rank,
                expected: c.cokernel.expected,
                cokernel_match: c.cokernel_match,
                samples,
                rank_jump,
                seed: c.cokernel.seed,
                trials: g.trials,
                assumptions: c.assumptions.iter().map(|a| a.to_string()).collect(),
                verdict: c.verdict.into(),
            };
            emit(&report, json)
        }
        Command::RankRemark { n, m } => {
            let r = rank_comparison(*n, *m)?;
            let report = RankComparisonJson {
                n: r.n,
                m: r.m,
                jet_ring_rank: r.jet_ring_rank,
                tensor_rank: r.tensor_rank,
                isomorphic: r.isomorphic(),
                verdict: r.verdict().into(),
            };
            emit(&report, json)
        }
    };
    Ok(out)
}
