//! JSON payloads for each command.

use blochjac::inverse::{Recovery, RecoveryDiagnostics};
use blochjac::spectral::{
    BandStructure, CharDeterminant, CheckStatus, Edge, IdentityReport, MultiplierPair, ResonanceSet, SurfacePoly,
};
use blochjac::{CFloat, RatPoly};
use serde_json::{json, Value};

use crate::document::format_rational;

fn complex(c: CFloat) -> Value {
    json!({ "re": c.re, "im": c.im })
}

fn poly_strings(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn edge(e: &Edge) -> Value {
    json!({
        "value": e.value,
        "kinds": e.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
        "branches": e.branches,
    })
}

pub fn bands(bs: &BandStructure) -> Value {
    let gaps: Vec<Value> = blochjac::spectral::classify_gaps(bs)
        .iter()
        .map(|g| {
            json!({
                "lo": g.lo,
                "hi": g.hi,
                "kind": g.kind.as_str(),
                "lo_kinds": g.lo_kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
                "hi_kinds": g.hi_kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "segments": bs.segments.iter().map(|s| json!({ "lo": s.lo, "hi": s.hi, "multiplicity": s.multiplicity })).collect::<Vec<_>>(),
        "spectrum": bs.spectrum().iter().map(|&(lo, hi)| json!([lo, hi])).collect::<Vec<_>>(),
        "branch_bands": bs.branch_bands.iter().map(|b| b.iter().map(|&(lo, hi)| json!([lo, hi])).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "edges": bs.edges.iter().map(edge).collect::<Vec<_>>(),
        "candidates": bs.candidates.iter().map(edge).collect::<Vec<_>>(),
        "gaps": gaps,
        "floquet_samples": bs.floquet_samples,
    })
}

pub fn resonances(rs: &ResonanceSet) -> Value {
    json!({
        "rho": poly_strings(&rs.rho),
        "degree": rs.rho.degree(),
        "degenerate": rs.degenerate,
        "zeros": rs.clusters.iter().map(|&(z, k)| json!({
            "re": z.re,
            "im": z.im,
            "real": z.im == 0.0,
            "multiplicity": k,
        })).collect::<Vec<_>>(),
        "real_count": rs.real.iter().filter(|&&r| r).count(),
        "complex_count": rs.real.iter().filter(|&&r| !r).count(),
    })
}

pub fn lyapunov_point(z: CFloat, deltas: &[CFloat], mults: &[MultiplierPair]) -> Value {
    let branches: Vec<Value> = deltas
        .iter()
        .zip(mults)
        .map(|(&d, m)| {
            json!({
                "delta": complex(d),
                "in_band": blochjac::spectral::in_band(d),
                "tau": complex(m.tau),
                "tau_inv": complex(m.tau_inv),
                "abs_tau": m.tau.norm(),
                "on_unit_circle": m.on_unit_circle,
            })
        })
        .collect();
    json!({ "z": complex(z), "branches": branches })
}

pub fn determinant(cd: &CharDeterminant, sp: &SurfacePoly) -> Value {
    let phi: Vec<Vec<String>> = (0..=sp.degree()).map(|j| poly_strings(&sp.phi_coeff(j))).collect();
    json!({
        "p": cd.period(),
        "m": cd.block_size(),
        "c": format_rational(cd.c()),
        "xi": cd.xi().iter().map(poly_strings).collect::<Vec<_>>(),
        "phi": phi,
        "periodic_q": poly_strings(&cd.q_at_sign(false)),
        "antiperiodic_q": poly_strings(&cd.q_at_sign(true)),
    })
}

pub fn diagnostics_json(d: &RecoveryDiagnostics) -> Value {
    json!({
        "max_imag": d.max_imag,
        "max_root_residual": d.max_root_residual,
        "max_cosine_residual": d.max_cosine_residual,
        "hyperbolicity_defect": d.hyperbolicity_defect,
        "max_condition": d.max_condition,
    })
}

pub fn recovery(rec: &Recovery, exact: Option<(&CharDeterminant, Value)>) -> Value {
    let mut out = json!({
        "p": rec.period(),
        "m": rec.block_size(),
        "c": rec.c,
        "xi": rec.xi,
        "zeta": rec.eta.zeta,
        "diagnostics": diagnostics_json(&rec.diagnostics),
        "exact": Value::Null,
    });
    if let Some((cd, bands)) = exact {
        out["exact"] = json!({
            "c": format_rational(cd.c()),
            "xi": cd.xi().iter().map(poly_strings).collect::<Vec<_>>(),
            "bands": bands,
        });
    }
    out
}

pub fn report(r: &IdentityReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "exact": c.exact,
                "required": c.required,
                "status": match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::NotApplicable => "n/a",
                },
                "residual": c.residual,
                "detail": c.detail,
            })
        })
        .collect();
    json!({ "passed": r.all_passed(), "checks": checks })
}
