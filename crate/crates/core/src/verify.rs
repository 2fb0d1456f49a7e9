//! Named invariant suites, run by `mds verify`.
//!
//! Every check carries a short formula label naming the identity or bound it
//! exercises.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{a2_closed_forms, convergence, gamma_tilde_expansion, params};
use crate::census::{count_mds_grassmannian_filter, count_mds_matrix_scan};
use crate::code::{weight_spectrum, GrassmannCode, SpectrumMode};
use crate::combinatorics::{gaussian_binomial, gl_order};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{
    form_profile, form_weight, interior, pairing, plucker_embed, satisfies_plucker, DualForm, MultiVector, PluckerTable,
    WeightMethod,
};
use crate::fields::Field;
use crate::index::MultiIndex;
use crate::linalg::{enumerate_grassmannian, for_each_projective_point};
use crate::sections::{inclusion_exclusion, section_norm_with, structured_counts, LinearSection, SectionMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fields,
    Plucker,
    Weights,
    Sections,
    Asymptotics,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Fields => "fields",
            Suite::Plucker => "plucker",
            Suite::Weights => "weights",
            Suite::Sections => "sections",
            Suite::Asymptotics => "asymptotics",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    /// The identity or bound being checked.
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} [{}] {} ({}): {}", self.suite, self.name, self.anchor, self.detail)
    }
}

struct Runner<'a> {
    suite: &'static str,
    exec: &'a Exec,
    out: Vec<Check>,
}

impl Runner<'_> {
    fn check(&mut self, name: impl Into<String>, anchor: &'static str, body: impl FnOnce(&Exec) -> Result<(bool, String)>) {
        let (passed, detail) = body(self.exec).unwrap_or_else(|e| (false, format!("error: {e}")));
        self.out.push(Check { suite: self.suite, name: name.into(), anchor, passed, detail });
    }
}

fn gf(q: u64) -> Result<Arc<Field>> {
    Field::from_order(q).map(Arc::new)
}

/// Runs one suite (or all of them) and returns every check in order.
pub fn run_suite(suite: Suite, scale: Scale, exec: &Exec) -> Vec<Check> {
    if suite == Suite::All {
        return [Suite::Fields, Suite::Plucker, Suite::Weights, Suite::Sections, Suite::Asymptotics]
            .into_iter()
            .flat_map(|s| run_suite(s, scale, exec))
            .collect();
    }
    let mut r = Runner { suite: suite.name(), exec, out: Vec::new() };
    match suite {
        Suite::Fields => fields(&mut r, scale),
        Suite::Plucker => plucker(&mut r, scale),
        Suite::Weights => weights(&mut r, scale),
        Suite::Sections => sections(&mut r, scale),
        Suite::Asymptotics => asymptotics(&mut r, scale),
        Suite::All => unreachable!(),
    }
    r.out
}

fn fields(r: &mut Runner, scale: Scale) {
    let orders: &[u64] = match scale {
        Scale::Quick => &[2, 3, 4, 5, 8, 9],
        Scale::Full => &[2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32],
    };
    for &q in orders {
        r.check(format!("field axioms GF({q})"), "GF(q) is a field", |_| {
            let f = gf(q)?;
            let q32 = q as u32;
            let mut bad = 0u64;
            for a in 0..q32 {
                if a != 0 && f.mul(a, f.inv(a)?) != 1 {
                    bad += 1;
                }
                for b in 0..q32 {
                    bad += (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) as u64;
                    let c = (a + b) % q32;
                    bad += (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) as u64;
                }
            }
            Ok((bad == 0, format!("{bad} violations over {q}^2 pairs")))
        });
    }
    r.check("GL order recursion", "[k]_q = q^{k-1}(q^k - 1)[k-1]_q", |_| {
        let mut ok = true;
        for q in [2u64, 3, 4, 5] {
            for k in 1..=6u64 {
                let rhs = BigUint::from(q).pow(k as u32 - 1) * (BigUint::from(q).pow(k as u32) - 1u32) * gl_order(k - 1, q);
                ok &= gl_order(k, q) == rhs;
            }
        }
        Ok((ok, "k <= 6, q in {2,3,4,5}".into()))
    });
    r.check("Grassmannian size", "|G(k,n)| = Gaussian binomial", |exec| {
        let mut ok = true;
        for (k, n, q) in [(2, 4, 2), (2, 4, 3), (2, 5, 2), (3, 6, 2)] {
            let count = enumerate_grassmannian(&gf(q)?, k, n, exec)?.count();
            ok &= BigUint::from(count) == gaussian_binomial(k as u64, n as u64, q);
        }
        Ok((ok, "(2,4,2) (2,4,3) (2,5,2) (3,6,2)".into()))
    });
}

fn plucker(r: &mut Runner, scale: Scale) {
    let cases: &[(usize, usize, u64)] = match scale {
        Scale::Quick => &[(2, 4, 2)],
        Scale::Full => &[(2, 4, 2), (2, 4, 3), (2, 5, 2), (3, 6, 2)],
    };
    for &(k, n, q) in cases {
        r.check(format!("embedded points are decomposable ({k},{n},{q})"), "p(Λ) satisfies the Plücker relations", |exec| {
            let f = gf(q)?;
            let mut bad = 0;
            for p in enumerate_grassmannian(&f, k, n, exec)? {
                bad += !satisfies_plucker(&plucker_embed(p.matrix())?)? as usize;
            }
            Ok((bad == 0, format!("{bad} failures")))
        });
        r.check(format!("decomposable count ({k},{n},{q})"), "|decomposable points of P(∧^k V)| = |G(k,n)|", |exec| {
            let f = gf(q)?;
            let big_n = crate::index::small_binomial(n, k);
            let points = BigUint::from(q).pow(big_n as u32);
            exec.check("projective points of ∧^k V", &points)?;
            let mut count = 0u64;
            for_each_projective_point(f.order(), big_n, |c| {
                let v = MultiVector::from_coeffs(&f, k, n, c.to_vec()).expect("shape");
                count += satisfies_plucker(&v).expect("nonzero") as u64;
            });
            let expected = gaussian_binomial(k as u64, n as u64, q);
            Ok((BigUint::from(count) == expected, format!("{count} vs {expected}")))
        });
        r.check(format!("interior adjunction ({k},{n},{q})"), "<ι_ξ ω, ζ> = <ω, ξ ∧ ζ>", |_| {
            let f = gf(q)?;
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let mut bad = 0;
            for _ in 0..200 {
                let j = rng.gen_range(1..k);
                let w = DualForm::random(&f, k, n, &mut rng)?;
                let xi = MultiVector::random(&f, j, n, &mut rng)?;
                let zeta = MultiVector::random(&f, k - j, n, &mut rng)?;
                let lhs = pairing(&interior(&xi, &w)?, &zeta)?;
                let rhs = pairing(&w, &xi.wedge(&zeta)?)?;
                bad += (lhs != rhs) as usize;
            }
            Ok((bad == 0, format!("{bad} of 200 random triples differ")))
        });
        r.check(format!("V_ω and U_ω dimensions ({k},{n},{q})"), "dim V_ω + dim U_ω = n; indecomposable ⇒ dim U_ω ≥ k + 2", |_| {
            let f = gf(q)?;
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            let mut bad = 0;
            for _ in 0..200 {
                let w = DualForm::random(&f, k, n, &mut rng)?;
                if w.is_zero() {
                    continue;
                }
                let p = form_profile(&w)?;
                bad += (p.dim_v() + p.dim_u() != n
                    || p.decomposable != (p.dim_v() == n - k)
                    || (!p.decomposable && p.dim_u() < k + 2)) as usize;
            }
            Ok((bad == 0, format!("{bad} violations")))
        });
    }
    if scale == Scale::Full {
        r.check("contractions of decomposable forms (3,5,2)", "ω decomposable ⇔ every ι_v ω decomposable", |_| {
            let (bad, total) = dec_lemma_scan(3, 5, 2)?;
            Ok((bad == 0, format!("{bad} of {total} forms violate")))
        });
    }
}

/// Counts nonzero `k`-forms over GF(q) where decomposability of `ω` and of
/// all its contractions disagree. Needs `k >= 3`: every contraction of a
/// 2-form is a decomposable 1-form.
pub fn dec_lemma_scan(k: usize, n: usize, q: u64) -> Result<(usize, usize)> {
    if k < 3 {
        return Err(Error::DegreeMismatch(format!("contraction test needs degree >= 3, got {k}")));
    }
    let f = gf(q)?;
    let big_n = crate::index::small_binomial(n, k);
    let mut bad = 0;
    let mut total = 0;
    let mut coeffs = vec![0u32; big_n];
    while crate::linalg::odometer_step(&mut coeffs, q as u32) {
        let w = DualForm::from_coeffs(&f, k, n, coeffs.clone())?;
        total += 1;
        let mut all = true;
        for_each_projective_point(f.order(), n, |v| {
            let u = MultiVector::vector(&f, v).expect("dimension");
            let c = interior(&u, &w).expect("degree");
            all &= c.is_zero() || satisfies_plucker(&c).expect("nonzero");
        });
        bad += (all != satisfies_plucker(&w)?) as usize;
    }
    Ok((bad, total))
}

fn weights(r: &mut Runner, scale: Scale) {
    let cases: &[(usize, usize, u64, usize)] = match scale {
        Scale::Quick => &[(2, 4, 3, 30), (2, 5, 2, 30)],
        Scale::Full => &[(2, 4, 3, 200), (2, 5, 2, 200), (3, 6, 2, 200)],
    };
    for &(k, n, q, count) in cases {
        r.check(format!("direct = recursive ({k},{n},{q})"), "||ω|| = (1/(q^k - 1)) Σ_{u ∉ V_ω} ||ω_u||", |exec| {
            let f = gf(q)?;
            let table = PluckerTable::build(&f, k, n, exec)?;
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut bad = 0;
            for _ in 0..count {
                let w = DualForm::random(&f, k, n, &mut rng)?;
                if w.is_zero() {
                    continue;
                }
                bad += (table.weight(&w)? != form_weight(&w, WeightMethod::Recursive, exec)?) as usize;
            }
            Ok((bad == 0, format!("{bad} of {count} random forms differ")))
        });
    }
    r.check("two-form weights (2,n,q)", "||ω_r|| = q^δ + q^{δ-2} + ... + q^{δ-2r+2}", |exec| {
        let mut bad = 0;
        for (n, q) in [(4usize, 2u64), (4, 3), (5, 2), (6, 2)] {
            let f = gf(q)?;
            let delta = 2 * (n as u32 - 2);
            for rr in 1..=n / 2 {
                let terms: Vec<_> = (0..rr).map(|i| (MultiIndex::new(&[2 * i + 1, 2 * i + 2], n).expect("index"), 1)).collect();
                let w = DualForm::from_terms(&f, 2, n, &terms)?;
                let expected: u64 = (0..rr as u32).map(|i| q.pow(delta - 2 * i)).sum();
                bad += (form_weight(&w, WeightMethod::Direct, exec)? != expected) as usize;
            }
        }
        Ok((bad == 0, format!("{bad} mismatches")))
    });
    r.check("spectrum of C(2,4) over GF(2)", "weights {q^δ, q^δ + q^{δ-2}}", |exec| {
        let code = GrassmannCode::build(&gf(2)?, 2, 4, exec)?;
        let s = weight_spectrum(&code, SpectrumMode::Exhaustive, exec)?;
        Ok((s == BTreeMap::from([(16, 35), (20, 28)]), format!("{s:?}")))
    });
}

fn sections(r: &mut Runner, scale: Scale) {
    let cases: &[(usize, usize, u64)] = match scale {
        Scale::Quick => &[(2, 4, 2)],
        Scale::Full => &[(2, 4, 2), (2, 4, 3), (2, 5, 2)],
    };
    for &(k, n, q) in cases {
        r.check(format!("inclusion-exclusion = census ({k},{n},{q})"), "γ = E_1 - E_2 + ... + (-1)^{N-1} E_N", |exec| {
            let f = gf(q)?;
            let rep = inclusion_exclusion(k, n, &f, exec)?;
            let census = count_mds_matrix_scan(k, n, &f, exec)?.gamma;
            Ok((rep.gamma_reconstructed == BigInt::from(census.clone()), format!("{} vs {census}", rep.gamma_reconstructed)))
        });
        r.check(format!("point scan = annihilator sum ({k},{n},{q})"), "||L|| = (1/q^{r-1}) Σ_{[ω] ∈ Ann(L)} ||ω||", |exec| {
            let f = gf(q)?;
            let table = PluckerTable::build(&f, k, n, exec)?;
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut bad = 0;
            for _ in 0..40 {
                let rr = rng.gen_range(1..=4);
                let l = LinearSection::random(&f, k, n, rr, &mut rng)?;
                bad += (section_norm_with(&table, &l, SectionMethod::PointScan, exec)?
                    != section_norm_with(&table, &l, SectionMethod::AnnihilatorSum, exec)?) as usize;
            }
            Ok((bad == 0, format!("{bad} of 40 random sections differ")))
        });
    }
    r.check("structured counts (2,5)", "c_1(r) = C(n,k-1) C(n-k+1,r), c_2(r) = C(n,k+1) C(k+1,r)", |_| {
        let s = structured_counts(2, 5)?;
        Ok((s.c1[3] == 20 && s.c2[3] == 10, format!("c1(3) = {}, c2(3) = {}", s.c1[3], s.c2[3])))
    });
}

fn asymptotics(r: &mut Runner, scale: Scale) {
    r.check("a2 table", "a2(3,6..9) = 152, 506, 1360, 3158", |_| {
        let got = (6..=9).map(|n| params(3, n).map(|p| p.a2)).collect::<Result<Vec<_>>>()?;
        let want: Vec<BigInt> = [152, 506, 1360, 3158].into_iter().map(BigInt::from).collect();
        Ok((got == want, format!("{got:?}")))
    });
    r.check("a2 closed forms k = 1, 2", "a2(1,n) = (n²-3n+2)/2, a2(2,n) = (3n⁴-10n³+9n²-26n+48)/24", |_| {
        let mut bad = 0;
        for n in 3..=12 {
            for k in 1..=2 {
                bad += (params(k, n)?.a2 != a2_closed_forms(k, n)?) as usize;
            }
        }
        Ok((bad == 0, format!("{bad} mismatches for 3 <= n <= 12")))
    });
    r.check("a2 duality", "a2(k,n) = a2(n-k,n)", |_| {
        let mut bad = 0;
        for n in 2..=12 {
            for k in 1..n {
                bad += (params(k, n)?.a2 != params(n - k, n)?.a2) as usize;
            }
        }
        Ok((bad == 0, format!("{bad} asymmetric pairs")))
    });
    r.check("arc-count coefficients", "b1 = N - n, b2 = a2 - (n-1)(N-n) - (n²-3n+2)/2", |_| {
        let a = params(3, 10)?;
        let b = params(4, 8)?;
        let ok = (a.b1.clone(), a.b2.clone(), b.b1.clone(), b.b2.clone())
            == (BigInt::from(110), BigInt::from(5561), BigInt::from(62), BigInt::from(1710));
        let series = gamma_tilde_expansion(3, 10, 3)? == vec![BigInt::from(1), BigInt::from(-110), BigInt::from(5561)]
            && gamma_tilde_expansion(4, 8, 3)? == vec![BigInt::from(1), BigInt::from(-62), BigInt::from(1710)];
        Ok((ok && series, format!("(3,10): {}, {}; (4,8): {}, {}", a.b1, a.b2, b.b1, b.b2)))
    });
    let conv: &[(usize, usize, &[u64])] = match scale {
        Scale::Quick => &[(2, 5, &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16])],
        Scale::Full => &[
            (2, 5, &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64]),
            (3, 6, &[2, 3, 4, 5, 7, 8, 9]),
        ],
    };
    for &(k, n, qs) in conv {
        r.check(format!("convergence ({k},{n})"), "γ = q^δ + (1-N) q^{δ-1} + a2 q^{δ-2} + O(q^{δ-3})", |exec| {
            let rep = convergence(k, n, qs, exec)?;
            Ok((rep.bounded, format!("max |residual / q^(δ-3)| = {}", rep.max_abs_normalized)))
        });
    }
    if scale == Scale::Full {
        r.check("census methods agree (k <= 3, n <= 6, q <= 4)", "U(k,n) = ∩_I C_I", |exec| {
            let mut bad = 0;
            for q in [2u64, 3, 4] {
                let f = gf(q)?;
                for n in 2..=6 {
                    for k in 1..=3.min(n - 1) {
                        bad += (count_mds_matrix_scan(k, n, &f, exec)?.gamma != count_mds_grassmannian_filter(k, n, &f, exec)?.gamma) as usize;
                    }
                }
            }
            Ok((bad == 0, format!("{bad} disagreements")))
        });
    }
}

/// `true` iff every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let exec = Exec::default();
        for suite in [Suite::Fields, Suite::Plucker, Suite::Weights, Suite::Sections, Suite::Asymptotics] {
            let checks = run_suite(suite, Scale::Quick, &exec);
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn dec_lemma_small() {
        assert_eq!(dec_lemma_scan(3, 5, 2).unwrap(), (0, 1023));
        assert!(dec_lemma_scan(2, 4, 2).is_err());
    }
}
