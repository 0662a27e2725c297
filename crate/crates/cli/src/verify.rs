//! Re-checking reports.
//!
//! A report is accepted when its digest matches the recorded instance, the
//! decision recomputed from the instance agrees with it, and every witness
//! it carries passes a direct check that does not rerun the decision.

use serde_json::{json, Value};

use ylocal_core::exactalg::{poly_lcm, RationalFunction};
use ylocal_core::groebner::RadicalTester;
use ylocal_core::localmem::{
    coordinate_vector, minor_ideal, pencil_decompose, CramerWitness, LinearSubspace,
};
use ylocal_core::matspace::{trace_pairing, MatrixSubspace, Rank1Idempotent};
use ylocal_core::polymat::ScalarMatrix;
use ylocal_core::{Field, FieldScalar, Polynomial};

use crate::commands::{execute, matrix_side, CliError};
use crate::instance::{parse_instance, parse_polynomial, InstanceFile, Kind};
use crate::report::{digest, Report};

type Check = Result<bool, String>;

struct Ctx {
    field: Field,
    n: usize,
}

impl Ctx {
    fn poly(&self, v: &Value) -> Result<Polynomial, String> {
        let s = v.as_str().ok_or("expected a polynomial string")?;
        parse_polynomial(s, self.field, self.n).map_err(|e| e.to_string())
    }

    fn scalar(&self, v: &Value) -> Result<FieldScalar, String> {
        let p = self.poly(v)?;
        if !p.is_constant() {
            return Err(format!("expected a scalar, found {p}"));
        }
        Ok(p.constant_term())
    }

    fn scalars(&self, v: &Value) -> Result<Vec<FieldScalar>, String> {
        v.as_array()
            .ok_or("expected an array of scalars")?
            .iter()
            .map(|x| self.scalar(x))
            .collect()
    }

    fn matrix(&self, v: &Value) -> Result<ScalarMatrix, String> {
        let rows = v
            .as_array()
            .ok_or("expected a matrix")?
            .iter()
            .map(|r| self.scalars(r))
            .collect::<Result<Vec<_>, _>>()?;
        ScalarMatrix::from_rows(self.field, rows).map_err(|e| e.to_string())
    }

    fn index_set(&self, v: &Value, bound: usize) -> Result<Vec<usize>, String> {
        v.as_array()
            .ok_or("expected an index set")?
            .iter()
            .map(|x| match x.as_u64() {
                Some(i) if i >= 1 && (i as usize) <= bound => Ok(i as usize - 1),
                _ => Err(format!("index {x} out of range 1..={bound}")),
            })
            .collect()
    }
}

fn linear_of(inst: &InstanceFile) -> Result<LinearSubspace, String> {
    if inst.kind != Kind::LinearSubspace {
        return Err("expected a linear-subspace instance".into());
    }
    inst.linear_subspace().map_err(|e| e.to_string())
}

/// `sum alpha_i q_i = y`.
fn check_coefficients(ctx: &Ctx, v: &LinearSubspace, coeffs: &Value) -> Check {
    let alpha = ctx.scalars(coeffs)?;
    if alpha.len() != v.d() {
        return Ok(false);
    }
    let y = coordinate_vector(ctx.field, ctx.n);
    for (i, yi) in y.iter().enumerate() {
        let mut acc = Polynomial::zero(ctx.field, ctx.n);
        for (a, q) in alpha.iter().zip(v.basis()) {
            acc = &acc + &q[i].scale(a);
        }
        if &acc != yi {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_cramer(ctx: &Ctx, v: &LinearSubspace, w: &Value) -> Check {
    let lambdas = w["lambdas"]
        .as_array()
        .ok_or("missing lambdas")?
        .iter()
        .map(|l| {
            let num = ctx.poly(&l["num"])?;
            let den = ctx.poly(&l["den"])?;
            RationalFunction::new(&num, &den).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, String>>()?;
    let m = ctx.poly(&w["m"])?;
    let mut index_set = Vec::new();
    let mut minor = Polynomial::zero(ctx.field, ctx.n);
    if !w["index_set"].is_null() {
        index_set = ctx.index_set(&w["index_set"], ctx.n)?;
        minor = ctx.poly(&w["minor"])?;
        let all: Vec<usize> = (0..v.d()).collect();
        let det = v
            .q_matrix()
            .submatrix(&index_set, &all)
            .det()
            .map_err(|e| e.to_string())?;
        if minor.is_zero() || det != minor {
            return Ok(false);
        }
    }
    let cw = CramerWitness {
        index_set,
        minor,
        lambdas,
        m,
    };
    cw.verify(v, None).map_err(|e| e.to_string())
}

fn check_bounds(ctx: &Ctx, v: &LinearSubspace, w: &Value) -> Check {
    if !check_cramer(ctx, v, w)? {
        return Ok(false);
    }
    let m = ctx.poly(&w["m"])?;
    let d = v.d();
    if w["m_degree"].as_u64() != m.total_degree().map(u64::from) {
        return Ok(false);
    }
    if w["m_degree_below_d"].as_bool() != Some((m.total_degree().unwrap_or(0) as usize) < d) {
        return Ok(false);
    }
    let all: Vec<usize> = (0..d).collect();
    let mut every = true;
    for entry in w["minors"].as_array().ok_or("missing minors")? {
        let ix = ctx.index_set(&entry["index_set"], ctx.n)?;
        let det = v
            .q_matrix()
            .submatrix(&ix, &all)
            .det()
            .map_err(|e| e.to_string())?;
        if ctx.poly(&entry["minor"])? != det {
            return Ok(false);
        }
        let divides = m.divides(&det);
        if entry["m_divides"].as_bool() != Some(divides) {
            return Ok(false);
        }
        every &= divides;
    }
    let mut degrees_ok = true;
    for l in w["lambdas"].as_array().ok_or("missing lambdas")? {
        let (h, k) = (ctx.poly(&l["num"])?, ctx.poly(&l["den"])?);
        if l["num_degree"].as_u64() != h.total_degree().map(u64::from)
            || l["den_degree"].as_u64() != k.total_degree().map(u64::from)
        {
            return Ok(false);
        }
        degrees_ok &= l["ok"].as_bool() == Some(true);
        if l["ok"].as_bool() == Some(true) && !h.is_zero() {
            let fine = h.total_degree() == k.total_degree()
                && (h.total_degree().unwrap_or(0) as usize) <= d;
            if !fine {
                return Ok(false);
            }
        }
    }
    let mut lcm = Polynomial::one(ctx.field, ctx.n);
    for l in w["lambdas"].as_array().ok_or("missing lambdas")? {
        lcm = poly_lcm(&lcm, &ctx.poly(&l["den"])?).map_err(|e| e.to_string())?;
    }
    Ok(lcm == m
        && w["m_divides_minors"].as_bool() == Some(every)
        && w["degrees_ok"].as_bool() == Some(degrees_ok))
}

/// The minor is the stated minor of `[Q | y]`, does not vanish at the
/// point when one is given, and otherwise lies outside the radical of the
/// ideal of `s x s` minors of `Q`.
fn check_failure(ctx: &Ctx, v: &LinearSubspace, fw: &Value) -> Check {
    let s = fw["stratum"].as_u64().ok_or("missing stratum")? as usize;
    let d = v.d();
    let rows = ctx.index_set(&fw["rows"], ctx.n)?;
    let cols = ctx.index_set(&fw["cols"], d + 1)?;
    if rows.len() != s || cols.len() != s || cols.last() != Some(&d) {
        return Ok(false);
    }
    let minor = ctx.poly(&fw["minor"])?;
    let c = v
        .augmented(&coordinate_vector(ctx.field, ctx.n))
        .map_err(|e| e.to_string())?;
    let det = c.submatrix(&rows, &cols).det().map_err(|e| e.to_string())?;
    if det != minor || minor.is_zero() {
        return Ok(false);
    }
    if fw["point"].is_null() {
        let ideal = minor_ideal(&v.q_matrix(), s).map_err(|e| e.to_string())?;
        let inside = RadicalTester::new(&ideal)
            .contains(&minor)
            .map_err(|e| e.to_string())?;
        Ok(!inside)
    } else {
        let point = ctx.scalars(&fw["point"])?;
        if point.len() != ctx.n {
            return Ok(false);
        }
        // the rank of Q jumps by one at the point: all smaller-stratum minors of Q vanish
        let q_rank = v
            .q_matrix()
            .evaluate(&point)
            .map_err(|e| e.to_string())?
            .rank();
        Ok(!minor.evaluate(&point).map_err(|e| e.to_string())?.is_zero() && q_rank + 1 == s)
    }
}

fn check_idempotent(ctx: &Ctx, w: &MatrixSubspace, e: &Value) -> Check {
    let cand = Rank1Idempotent {
        u: ctx.scalars(&e["u"])?,
        v: ctx.scalars(&e["v"])?,
    };
    if !cand.is_valid() || cand.u.len() != ctx.n {
        return Ok(false);
    }
    if !e["matrix"].is_null() && ctx.matrix(&e["matrix"])? != cand.matrix() {
        return Ok(false);
    }
    w.contains(&cand.matrix()).map_err(|e| e.to_string())
}

fn check_perp(ctx: &Ctx, w: &MatrixSubspace, witness: &Value) -> Check {
    let basis = witness["basis"]
        .as_array()
        .ok_or("missing basis")?
        .iter()
        .map(|m| ctx.matrix(m))
        .collect::<Result<Vec<_>, _>>()?;
    let Ok(p) = MatrixSubspace::new(ctx.field, ctx.n, basis) else {
        return Ok(false);
    };
    for a in w.basis() {
        for b in p.basis() {
            if !trace_pairing(a, b).map_err(|e| e.to_string())?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(p.dim() + w.dim() == ctx.n * ctx.n)
}

fn check_pencil(ctx: &Ctx, v: &LinearSubspace, witness: &Value) -> Check {
    let pencil = pencil_decompose(v).map_err(|e| e.to_string())?;
    let stated = witness["pencil"]
        .as_array()
        .ok_or("missing pencil")?
        .iter()
        .map(|m| ctx.matrix(m))
        .collect::<Result<Vec<_>, _>>()?;
    if stated != pencil {
        return Ok(false);
    }
    if witness["null_vector"].is_null() {
        return Ok(witness["coefficients"].is_null());
    }
    let p = ctx.scalars(&witness["null_vector"])?;
    if p.iter().all(FieldScalar::is_zero) {
        return Ok(false);
    }
    for a in &pencil {
        if !a
            .mul_vec(&p)
            .map_err(|e| e.to_string())?
            .iter()
            .all(FieldScalar::is_zero)
        {
            return Ok(false);
        }
    }
    check_coefficients(ctx, v, &witness["coefficients"])
}

/// Direct checks of the witnesses a report carries.
fn witness_checks(report: &Report, inst: &InstanceFile) -> Vec<(String, Check)> {
    let ctx = Ctx {
        field: inst.field,
        n: inst.n,
    };
    let mut out: Vec<(String, Check)> = Vec::new();
    let w = &report.witness;
    let fw = &report.failure_witness;
    match report.command.as_str() {
        "decide-span-f" if !w.is_null() => {
            out.push((
                "coefficients reproduce y".into(),
                linear_of(inst).and_then(|v| check_coefficients(&ctx, &v, &w["coefficients"])),
            ));
        }
        "decide-span-l" if !w.is_null() => {
            out.push((
                "cramer witness reproduces y".into(),
                linear_of(inst).and_then(|v| check_cramer(&ctx, &v, w)),
            ));
        }
        "witness-bounds" if !w.is_null() => {
            out.push((
                "stated bounds hold".into(),
                linear_of(inst).and_then(|v| check_bounds(&ctx, &v, w)),
            ));
        }
        "decide-local" if !fw.is_null() => {
            out.push((
                "failure witness".into(),
                linear_of(inst).and_then(|v| check_failure(&ctx, &v, fw)),
            ));
        }
        "pencil" if !w.is_null() => {
            out.push((
                "common null vector".into(),
                linear_of(inst).and_then(|v| check_pencil(&ctx, &v, w)),
            ));
        }
        "r1free" if !fw.is_null() => {
            let check = matrix_side(inst).map_err(|e| e.to_string()).and_then(|ws| {
                if !fw["idempotent"].is_null() {
                    check_idempotent(&ctx, &ws, &fw["idempotent"])
                } else {
                    let v =
                        LinearSubspace::from_matrices(ctx.field, ctx.n, perp_basis(&ws).as_slice())
                            .map_err(|e| e.to_string())?;
                    check_failure(&ctx, &v, &fw["local"])
                }
            });
            out.push(("r1free failure witness".into(), check));
        }
        "idempotent-search" if !fw.is_null() => {
            let check = matrix_side(inst)
                .map_err(|e| e.to_string())
                .and_then(|ws| check_idempotent(&ctx, &ws, fw));
            out.push(("rank-1 idempotent in W".into(), check));
        }
        "perp" if !w.is_null() => {
            let check = matrix_side(inst)
                .map_err(|e| e.to_string())
                .and_then(|ws| check_perp(&ctx, &ws, w));
            out.push(("orthogonal complement".into(), check));
        }
        "tracezero" if !fw.is_null() => {
            let check = matrix_side(inst).map_err(|e| e.to_string()).and_then(|ws| {
                let i = fw["index"].as_u64().ok_or("missing index")? as usize;
                let m = ws
                    .basis()
                    .get(i.wrapping_sub(1))
                    .ok_or("index out of range")?;
                Ok(!m.trace().is_zero() && ctx.scalar(&fw["trace"])? == m.trace())
            });
            out.push(("basis matrix with nonzero trace".into(), check));
        }
        _ => {}
    }
    out
}

fn perp_basis(w: &MatrixSubspace) -> Vec<ScalarMatrix> {
    ylocal_core::matspace::perp(w).basis().to_vec()
}

pub fn verify_report(text: &str, timing: bool) -> Result<Report, CliError> {
    let start = std::time::Instant::now();
    let report: Report = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("not a decision report: {e}")))?;
    if report.command == "verify" {
        return Err(CliError::Input(
            "verify reports cannot be verified again".into(),
        ));
    }
    let mut checks: Vec<(String, Check)> = Vec::new();
    checks.push((
        "instance digest".into(),
        Ok(digest(&report.instance) == report.instance_digest),
    ));
    let inst = parse_instance(&report.instance)
        .map_err(|e| CliError::Input(format!("recorded instance: {e}")))?;
    checks.push((
        "header fields".into(),
        Ok(report.field == inst.field.to_string() && report.n == inst.n),
    ));
    // budget exhaustion while recomputing is a failure to compute, not a rejection
    let recomputed = execute(&report.command, &inst, &report.options)?;
    checks.push((
        "recomputed outcome".into(),
        Ok(recomputed.outcome == report.outcome && recomputed.d == report.d),
    ));
    checks.push((
        "recomputed witnesses".into(),
        Ok(recomputed.witness == report.witness
            && recomputed.failure_witness == report.failure_witness),
    ));
    checks.extend(witness_checks(&report, &inst));

    let rendered: Vec<Value> = checks
        .iter()
        .map(|(name, r)| match r {
            Ok(ok) => json!({ "check": name, "ok": ok }),
            Err(e) => json!({ "check": name, "ok": false, "error": e }),
        })
        .collect();
    let first_failure = checks
        .iter()
        .position(|(_, r)| !matches!(r, Ok(true)))
        .map_or(Value::Null, |i| rendered[i].clone());
    let outcome = first_failure.is_null();
    Ok(Report {
        command: "verify".into(),
        outcome,
        witness: json!({ "verified_command": report.command, "checks": rendered }),
        failure_witness: first_failure,
        field: report.field,
        n: report.n,
        d: report.d,
        elapsed_ms: if timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
        instance: report.instance,
        instance_digest: report.instance_digest,
        options: report.options,
    })
}
