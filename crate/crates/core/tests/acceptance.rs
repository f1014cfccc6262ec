//! End-to-end acceptance criteria 1 to 10. Run with `--nocapture` to see one line per criterion.

use std::time::{Duration, Instant};

use qzeta::arith::{rat, BigFloat, Rat};
use qzeta::asymptotics::slopes::{bound_p, target_d, target_s};
use qzeta::asymptotics::{delta, delta_asymptotic_constant, slope_d, slope_p_multi, slope_s};
use qzeta::asymptotics::delta::delta_constant_by_search;
use qzeta::eisenstein::{eisenstein_expansion, express_in_e4_e6, monomial_pairs, q_limit_relative_error, BasisTerm};
use qzeta::linform::table::r_symmetry_holds;
use qzeta::linform::{check_forms, partial_fractions, point_a_residual, s_eps_numeric, u_power, Eps, Params};
use qzeta::zeta3::{dbar_probe, qball_numeric, qbgn_numeric, zeta3_form, zeta3_partial_fractions, zeta3_residual};

const PREC: usize = 256;
const GRID: [(u32, u32); 3] = [(4, 1), (6, 1), (6, 2)];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn record(out: &mut Vec<Outcome>, id: u32, pass: bool, detail: String) {
    println!("criterion {id:>2}: {} | {detail}", if pass { "PASS" } else { "FAIL" });
    out.push(Outcome { id, pass, detail });
}

fn ten_pow(e: i64) -> BigFloat {
    BigFloat::from_i64(10, PREC).powi(e)
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn criterion_1(out: &mut Vec<Outcome>) {
    let t = Instant::now();
    let d = delta(12, 2, PREC).unwrap().to_f64();
    let el = t.elapsed();
    let pass = (d - 1.080_059).abs() < 1e-6 && d > 1.0 && el < Duration::from_secs(1);
    record(out, 1, pass, format!("delta(12,2) = {d:.9}, runtime {}", secs(el)));
}

fn criterion_2(out: &mut Vec<Outcome>) {
    let c = delta_asymptotic_constant(PREC);
    let v = c.value.to_f64();
    let (u, searched) = delta_constant_by_search();
    let gap = (v - searched).abs();
    let pass = (v - 0.335_892).abs() < 1e-6 && gap < 1e-8;
    record(out, 2, pass, format!("constant = {v:.9}, grid/golden-section max {searched:.12} at u = {u:.6}, gap {gap:.1e}"));
}

/// Criteria 3, 4 and the n ≤ 8 part of 5 share the partial-fraction tables.
fn grid_criteria(out: &mut Vec<Outcome>) {
    let qs = [rat(1, 2), rat(1, 3), rat(-1, 2)];
    let tol = ten_pow(-40);
    let mut worst = BigFloat::zero(PREC);
    let mut residual_failures = Vec::new();
    let mut denom_failures = Vec::new();
    let mut structural_failures = Vec::new();
    let mut checked = (0usize, 0usize);
    let mut identity_time = Duration::ZERO;
    for (a, r) in GRID {
        for n in 0..=8 {
            let p = Params::new(a, r, n).unwrap();
            let t = Instant::now();
            let table = partial_fractions(&p).unwrap();
            identity_time += t.elapsed();
            for eps in Eps::both() {
                let t = Instant::now();
                let forms = table.p_eps(eps).unwrap();
                for q0 in &qs {
                    let res = point_a_residual(&p, &forms, q0, PREC).unwrap();
                    if !res.residual.abs_lt(&tol) {
                        residual_failures.push(format!("({a},{r},{n},{},{q0})", eps.value()));
                    }
                    if worst.abs_lt(&res.residual) {
                        worst = res.residual.abs();
                    }
                    checked.0 += 1;
                }
                identity_time += t.elapsed();
                let v = check_forms(&p, &forms);
                let odd_witness = v.witnesses.iter().any(|w| !w.product.num().is_even());
                if !v.pass || odd_witness {
                    denom_failures.push(format!("({a},{r},{n},{})", eps.value()));
                }
                checked.1 += v.witnesses.len();
            }
            let reciprocity = (1..=a as usize).all(|s| table.reciprocity_holds(s));
            let ok = table.reconstruction_holds() && r_symmetry_holds(&p) && table.symmetry_holds() && reciprocity;
            if !ok {
                structural_failures.push(format!("({a},{r},{n})"));
            }
        }
    }
    let pass3 = residual_failures.is_empty() && identity_time < Duration::from_secs(300);
    record(
        out,
        3,
        pass3,
        format!(
            "{} residuals, max {}, failures {:?}, runtime {}",
            checked.0,
            worst.to_sci_string(3),
            residual_failures,
            secs(identity_time)
        ),
    );
    record(out, 4, denom_failures.is_empty(), format!("{} products D_n P_s checked, failures {:?}", checked.1, denom_failures));

    let mut tail_failures = Vec::new();
    for (a, r) in GRID {
        for n in 0..=12 {
            let table = partial_fractions(&Params::new(a, r, n).unwrap()).unwrap();
            if !table.p_one_at_one().is_zero() {
                tail_failures.push(format!("P_1(1) at ({a},{r},{n})"));
            }
        }
    }
    for n in 0..=12 {
        if !zeta3_partial_fractions(n).unwrap().residue_sum().is_zero() {
            tail_failures.push(format!("sum b_j q^-j at n = {n}"));
        }
    }
    let pass5 = structural_failures.is_empty() && tail_failures.is_empty();
    record(
        out,
        5,
        pass5,
        format!(
            "reconstruction, R symmetry, d symmetry, reciprocity on n <= 8; P_1(1) = 0 and residue sum on n <= 12; failures {:?} {:?}",
            structural_failures, tail_failures
        ),
    );
}

fn criterion_6(out: &mut Vec<Outcome>) {
    let q0 = rat(1, 2);
    let ns_s: Vec<u32> = (2..=40).step_by(2).collect();
    let s = slope_s(4, 1, Eps::Odd, &q0, &ns_s, PREC).unwrap();
    let s_ok = s.gap_fitted < 0.05;

    let ns_d: Vec<u32> = (5..=60).step_by(5).collect();
    let d = slope_d(4, 1, &q0, &ns_d).unwrap();
    let d_ok = d.gap_raw < 0.03;

    let ns_p = [10, 20, 30, 40];
    let bound = bound_p(4, 1, &q0).unwrap();
    let reports = slope_p_multi(4, 1, &[Eps::Even, Eps::Odd], &q0, &ns_p, 0.02).unwrap();
    let p_ok = reports.iter().all(|r| r.all_within);
    let mut over = Vec::new();
    for (rep, eps) in reports.iter().zip([0, 1]) {
        for sample in &rep.samples {
            for &(s_idx, v) in &sample.per_s {
                if v > bound + 0.02 {
                    over.push(format!("eps={eps} n={} s={s_idx}: {v:.4}", sample.n));
                }
            }
        }
    }
    let fitted: Vec<String> = reports.iter().map(|r| format!("{:.4}", r.estimate.fitted)).collect();
    record(
        out,
        6,
        s_ok && d_ok && p_ok,
        format!(
            "S: fitted {:.6} vs {:.6} (gap {:.2}%) {}; D: raw {:.6} at n = 60 vs {:.6} (gap {:.2}%, fitted {:.4}) {}; \
             P: bound {:.4} + 0.02, fitted max-slope limits [{}], samples over the bound {:?} {}",
            s.fitted,
            target_s(4, 1, &q0).unwrap(),
            100.0 * s.gap_fitted,
            if s_ok { "ok" } else { "FAIL" },
            d.raw_last,
            target_d(4, 1, &q0).unwrap(),
            100.0 * d.gap_raw,
            d.fitted,
            if d_ok { "ok" } else { "FAIL" },
            bound,
            fitted.join(", "),
            over,
            if p_ok { "ok" } else { "FAIL" },
        ),
    );
}

fn criterion_7(out: &mut Vec<Outcome>) {
    let tol = 1e-40;
    let mut diff = 0.0f64;
    let mut factor = 0.0f64;
    let mut literal = 0.0f64;
    for q0 in [rat(1, 3), rat(1, 2)] {
        for n in 0..=8u32 {
            let ball = qball_numeric(n, &q0, PREC).unwrap();
            let bgn = qbgn_numeric(n, &q0, PREC).unwrap();
            diff = diff.max(ball.sub(&bgn).abs().to_f64());
            let s1 = s_eps_numeric(&Params::new(4, 1, n).unwrap(), Eps::Odd, &q0, PREC).unwrap();
            let u_n = u_power(n as i64, &q0, PREC).unwrap();
            // q^(−n/2)·ball = S^[1].
            factor = factor.max(ball.div(&u_n).sub(&s1).abs().to_f64());
            literal = literal.max(ball.sub(&s1.div(&u_n)).abs().to_f64());
        }
    }
    let pass = diff < tol && factor < tol;
    record(
        out,
        7,
        pass,
        format!(
            "max |ball - bgn| = {diff:.2e}; max |q^(-n/2) ball - S^[1]| = {factor:.2e} (note: |ball - q^(-n/2) S^[1]| = {literal:.2e})"
        ),
    );
}

fn criterion_8(out: &mut Vec<Outcome>) {
    let q0 = rat(1, 3);
    let mut worst = 0.0f64;
    for n in 0..=8 {
        let r = zeta3_residual(&zeta3_form(n).unwrap(), &q0, PREC).unwrap();
        worst = worst.max(r.residual.abs().to_f64());
    }
    let ns: Vec<u32> = (0..=10).collect();
    let rep = dbar_probe(&ns, &q0).unwrap();
    let ms: Vec<String> = rep.rows.iter().map(|r| r.m.map_or("-".into(), |m| m.to_string())).collect();
    let m_ok = rep.rows.iter().filter(|r| r.n >= 1).all(|r| r.m == Some(3));
    let pass = worst < 1e-40 && m_ok;
    record(
        out,
        8,
        pass,
        format!(
            "max residual {worst:.2e}; m for n = 0..10: [{}] (n = 0 has A_0 = 1, B_0 = 0); dbar slope at n = 10 {:.4}, fit {:.4}, \
             vs (9/pi^2) log 3 = {:.4} (recorded only)",
            ms.join(", "),
            rep.rows.last().and_then(|r| r.slope).unwrap_or(f64::NAN),
            rep.fitted_slope.unwrap_or(f64::NAN),
            rep.target_scaled
        ),
    );
}

fn criterion_9(out: &mut Vec<Outcome>) {
    let one = Rat::from_integer(1.into());
    let e8 = express_in_e4_e6(8, &eisenstein_expansion(4, 60).unwrap(), 0, 60).unwrap();
    let e10 = express_in_e4_e6(10, &eisenstein_expansion(5, 60).unwrap(), 0, 60).unwrap();
    let ok8 = e8.exact() && e8.basis == vec![BasisTerm { a: 2, b: 0, c: one.clone() }];
    let ok10 = e10.exact() && e10.basis == vec![BasisTerm { a: 1, b: 1, c: one }];
    let n_solve = monomial_pairs(12).len() - 1;
    let e12 = express_in_e4_e6(12, &eisenstein_expansion(6, n_solve + 40).unwrap(), n_solve, n_solve + 40).unwrap();
    let coeffs: Vec<String> = e12.basis.iter().map(|t| format!("{}", t.c)).collect();
    let pass = ok8 && ok10 && e12.exact();
    record(
        out,
        9,
        pass,
        format!(
            "E8 = E4^2 {ok8}, E10 = E4 E6 {ok10} (to q^60); E12 = [{}] on q^0..q^{n_solve}, {} mismatches to q^{}",
            coeffs.join(", "),
            e12.mismatches.len(),
            e12.verified_to
        ),
    );
}

fn criterion_10(out: &mut Vec<Outcome>) {
    let errs: Vec<f64> = [rat(1, 2), rat(9, 10), rat(99, 100)].iter().map(|q| q_limit_relative_error(2, q, PREC).unwrap()).collect();
    let pass = errs.windows(2).all(|w| w[1] < w[0]);
    let shown: Vec<String> = errs.iter().map(|e| format!("{e:.4e}")).collect();
    record(out, 10, pass, format!("relative errors at q0 = 0.5, 0.9, 0.99: [{}]", shown.join(", ")));
}

#[test]
fn acceptance() {
    let mut out = Vec::new();
    println!();
    criterion_1(&mut out);
    criterion_2(&mut out);
    grid_criteria(&mut out);
    criterion_6(&mut out);
    criterion_7(&mut out);
    criterion_8(&mut out);
    criterion_9(&mut out);
    criterion_10(&mut out);
    out.sort_by_key(|o| o.id);
    let failed: Vec<String> = out.iter().filter(|o| !o.pass).map(|o| format!("{}: {}", o.id, o.detail)).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
