use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use brace_core::clutching::{
    brace_from_clutching, fibre_equiv_decision, husemoller_counterexample, husemoller_rectified, p_map,
    thom_attaching, ClutchingClass, ClutchingError,
};
use brace_core::fibration::{
    diagonal_section_brace, h_split_verdict, parse_descriptor, rational_verdicts, surface_bundle_report,
    FibrationDescriptor, FibrationError, Verdict,
};
use clap::{Args, ValueEnum};
use serde_json::json;

use crate::report::Report;
use crate::{Ctx, Flag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    FreeLoop,
    SphereOverSphere,
    Clutched,
    SurfaceBundle,
    ProductPullback,
    Husemoller,
    Thom,
    PMap,
    Diagonal,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Descriptor file (fibration/1); alternative to --kind.
    #[arg(conflicts_with = "kind", required_unless_present = "kind")]
    descriptor: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Loop order for free-loop.
    #[arg(long)]
    m: Option<u32>,
    /// Target of the free loop fibration (S2 or S3).
    #[arg(long, default_value = "S2")]
    space: String,
    /// Base sphere dimension.
    #[arg(long)]
    n: Option<u32>,
    /// Fibre sphere dimension for clutched bundles.
    #[arg(long)]
    q: Option<u32>,
    /// Clutching class ρ ∈ π_{n−1} SO(q+1), comma-separated coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    rho: Option<Vec<i64>>,
    /// Lift ξ ∈ π_{n−1} SO(q) of ρ (chooses the section).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lift: Option<Vec<i64>>,
    /// Coordinates of {Id, Id}_s for sphere-over-sphere.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    brace: Option<Vec<i64>>,
    #[arg(long)]
    section_independent: bool,
    #[arg(long)]
    no_section: bool,
    /// Name of the total space, e.g. SU(3).
    #[arg(long)]
    total: Option<String>,
    /// Surface genus.
    #[arg(long)]
    g: Option<u32>,
    /// Whether w₂ of the plane bundle is nonzero.
    #[arg(long, value_enum)]
    w2: Option<Flag>,
    /// Sphere dimensions of the product base.
    #[arg(long, value_delimiter = ',')]
    factors: Option<Vec<u32>>,
    #[arg(long)]
    base_dim: Option<u32>,
    #[arg(long, default_value_t = 24)]
    degree_cap: u32,
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("--kind {kind} needs --{flag}"))
}

fn descriptor_from_flags(a: &AnalyzeArgs, kind: Kind) -> Result<Option<FibrationDescriptor>> {
    Ok(Some(match kind {
        Kind::FreeLoop => FibrationDescriptor::FreeLoop { m: need(a.m, "m", "free-loop")?, space: a.space.clone() },
        Kind::SphereOverSphere | Kind::Clutched => {
            let name = if kind == Kind::Clutched { "clutched" } else { "sphere-over-sphere" };
            let n = need(a.n, "n", name)?;
            match &a.rho {
                Some(rho) => FibrationDescriptor::Clutched {
                    n,
                    q: a.q.or(a.m).ok_or_else(|| anyhow!("--kind {name} needs --q"))?,
                    rho: rho.clone(),
                    lift: a.lift.clone(),
                },
                None if kind == Kind::Clutched => bail!("--kind clutched needs --rho"),
                None => FibrationDescriptor::SphereOverSphere {
                    n,
                    m: a.m.or(a.q).ok_or_else(|| anyhow!("--kind {name} needs --m (or --q)"))?,
                    brace: a.brace.clone(),
                    section_independent: a.section_independent,
                    section: !a.no_section,
                    total: a.total.clone(),
                },
            }
        }
        Kind::SurfaceBundle => FibrationDescriptor::SurfaceSphereBundle {
            g: need(a.g, "g", "surface-bundle")?,
            n: need(a.n, "n", "surface-bundle")?,
            w2_nonzero: matches!(need(a.w2, "w2", "surface-bundle")?, Flag::On),
        },
        Kind::ProductPullback => FibrationDescriptor::ProductPullback {
            factors: a.factors.clone().ok_or_else(|| anyhow!("--kind product-pullback needs --factors"))?,
            base_dim: need(a.base_dim, "base-dim", "product-pullback")?,
        },
        Kind::Husemoller | Kind::Thom | Kind::PMap | Kind::Diagonal => return Ok(None),
    }))
}

/// Errors meaning "this verdict does not apply to this descriptor".
fn not_applicable(e: &FibrationError) -> Option<String> {
    match e {
        FibrationError::Unsupported(m) => Some(m.clone()),
        FibrationError::Clutching(c) => match c.as_ref() {
            ClutchingError::Unsupported(m) => Some(m.clone()),
            _ => None,
        },
        _ => None,
    }
}

fn add(r: &mut Report, aspect: &str, v: Result<Verdict, FibrationError>) -> Result<()> {
    match v {
        Ok(v) => r.push(aspect, v),
        Err(e) => match not_applicable(&e) {
            Some(m) => r.skipped.push(format!("{aspect}: {m}")),
            None => return Err(e).with_context(|| format!("{aspect} verdict")),
        },
    }
    Ok(())
}

fn analyze_descriptor(ctx: &Ctx, desc: &FibrationDescriptor, cap: u32, r: &mut Report) -> Result<()> {
    if let FibrationDescriptor::SurfaceSphereBundle { g, n, w2_nonzero } = desc {
        let s = surface_bundle_report(*g, *n, *w2_nonzero)?;
        r.push("brace", s.brace);
        r.push("split", s.split);
        r.details = json!({ "stiefel_whitney": s.stiefel_whitney });
        return Ok(());
    }
    add(r, "h_split", h_split_verdict(desc, &ctx.table, &ctx.data, cap))?;
    add(r, "rational", rational_verdicts(desc, &ctx.table, &ctx.data, cap))?;
    if let FibrationDescriptor::Clutched { n, q, rho, lift } = desc {
        let c = ClutchingClass::new(&ctx.table, &ctx.data, *n, *q, rho, lift.as_deref())?;
        if let Ok(b) = brace_from_clutching(&ctx.table, &ctx.data, &c) {
            r.details = json!({
                "brace": {
                    "value": b.value.to_string(),
                    "coords": b.value.coords(),
                    "group": b.value.group().to_string(),
                    "suspended": b.suspended,
                    "section_independent": b.section_independent,
                    "lift": b.lift.map(|x| x.to_string()),
                    "formula": b.formula,
                    "source": b.source,
                }
            });
        }
        let trivial = ClutchingClass { n: c.n, q: c.q, rho: c.rho.group().zero(), lift: None };
        match fibre_equiv_decision(&ctx.table, &ctx.data, &c, &trivial) {
            Ok(v) => r.push("fibre_equiv_trivial", v),
            Err(e) => r.skipped.push(format!("fibre_equiv_trivial: {e}")),
        }
    }
    if r.verdicts.is_empty() {
        bail!("no verdict applies to this {} descriptor: {}", desc.kind_name(), r.skipped.join("; "));
    }
    Ok(())
}

pub fn cmd_analyze(ctx: &Ctx, a: &AnalyzeArgs, command: String) -> Result<Report> {
    let desc = match (&a.descriptor, a.kind) {
        (Some(p), _) => {
            let doc = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(parse_descriptor(&doc)?)
        }
        (None, Some(k)) => descriptor_from_flags(a, k)?,
        (None, None) => bail!("give a descriptor file or --kind"),
    };
    if let Some(d) = desc {
        let mut r = Report::new(command, json!({ "descriptor": d, "degree_cap": a.degree_cap }), ctx.sources.clone());
        analyze_descriptor(ctx, &d, a.degree_cap, &mut r)?;
        return Ok(r.finish(false));
    }
    let kind = a.kind.expect("kind present without descriptor");
    match kind {
        Kind::Husemoller => {
            let (n, q) = (a.n.unwrap_or(4), a.q.unwrap_or(2));
            let rho = a.rho.clone().unwrap_or_else(|| vec![1]);
            let mut r = Report::new(command, json!({ "kind": "husemoller", "n": n, "q": q, "rho": rho }), ctx.sources.clone());
            r.push("husemoller", husemoller_counterexample(&ctx.data)?);
            let c = ClutchingClass::new(&ctx.table, &ctx.data, n, q, &rho, None)?;
            r.details = match husemoller_rectified(&ctx.table, &ctx.data, &c) {
                Ok(rep) => json!({ "rectified": rep }),
                Err(e @ ClutchingError::NoLift { .. }) => json!({ "rectified": { "error": "NoLift", "detail": e.to_string() } }),
                Err(e) => return Err(e.into()),
            };
            Ok(r.finish(false))
        }
        Kind::Thom => {
            let (n, q) = (need(a.n, "n", "thom")?, need(a.q, "q", "thom")?);
            let xi = a.lift.clone().or(a.rho.clone()).ok_or_else(|| anyhow!("--kind thom needs --lift (ξ)"))?;
            let mut r = Report::new(command, json!({ "kind": "thom", "n": n, "q": q, "xi": xi }), ctx.sources.clone());
            let c = ClutchingClass::from_vector_bundle(&ctx.table, &ctx.data, n, q, &xi)?;
            r.details = json!({ "thom": thom_attaching(&ctx.data, &c)? });
            Ok(r.finish(false))
        }
        Kind::PMap => {
            let n = need(a.n, "n", "p-map")?;
            let mut r = Report::new(command, json!({ "kind": "p-map", "n": n }), ctx.sources.clone());
            r.details = json!({ "p_map": p_map(&ctx.table, n)? });
            Ok(r.finish(false))
        }
        Kind::Diagonal => {
            let n = need(a.n, "n", "diagonal")?;
            let mut r = Report::new(command, json!({ "kind": "diagonal", "n": n }), ctx.sources.clone());
            r.push("diagonal_brace", diagonal_section_brace(&ctx.table, n)?);
            Ok(r.finish(false))
        }
        _ => unreachable!("descriptor kinds handled above"),
    }
}
