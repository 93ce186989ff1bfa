use std::fmt::Write;

use isocolloc::analysis::{lookup, residual_superconvergence, ConvergenceStudy, ManufacturedProblem, Norm};
use isocolloc::point_selection::surrogate_points;
use isocolloc::study::{run_study, solve_1d, space_1d, Method};

use crate::config::StudyConfig;
use crate::CliError;

/// Sample points per element in residual output.
pub const RESIDUAL_SAMPLES: usize = 200;

/// Errors below this are treated as round-off when fitting tail orders.
const FLOOR: f64 = 1e-12;

/// CSV text plus a human-readable summary.
pub struct Output {
    pub csv: String,
    pub summary: String,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn tail(s: &ConvergenceStudy, norm: Norm) -> String {
    s.tail_order_above(norm, FLOOR).map(|o| format!("{o:.3}")).unwrap_or_else(|| "-".into())
}

pub fn convergence(cfg: &StudyConfig) -> Result<Output, CliError> {
    let study = run_study(&cfg.study(None)?)?;
    let mut csv = String::from("n_el,h,dof,L2,H1,H2,Linf,order_L2,order_H1\n");
    let (o2, o1) = (study.orders(Norm::L2), study.orders(Norm::H1));
    for (i, r) in study.reports.iter().enumerate() {
        let row = [
            r.n_el.to_string(),
            num(r.h),
            r.dof.to_string(),
            num(r.l2),
            num(r.h1),
            opt(r.h2),
            num(r.linf),
            opt(o2[i]),
            opt(o1[i]),
        ];
        writeln!(csv, "{}", row.join(",")).unwrap();
    }
    let mut summary = format!("{} / {} / p = {}: tail orders\n", study.problem, study.scheme, study.degree);
    for norm in [Norm::L2, Norm::H1, Norm::H2, Norm::Linf] {
        if study.reports[0].h2.is_none() && norm == Norm::H2 {
            continue;
        }
        writeln!(summary, "  {:<5} {}", format!("{norm:?}"), tail(&study, norm)).unwrap();
    }
    Ok(Output { csv, summary })
}

/// `(u − u_h)''` of the Galerkin solution on one mesh, densely sampled and at
/// the surrogate points.
pub fn residual(cfg: &StudyConfig) -> Result<Output, CliError> {
    let spec = cfg.study(Some(Method::Galerkin))?;
    let mp = spec.validate()?;
    let ManufacturedProblem::OneD(m) = &mp else {
        return Err(CliError::Config(format!("{} is not a 1D problem", spec.problem)));
    };
    let &[n_el] = spec.meshes.as_slice() else {
        return Err(CliError::Config("residual takes exactly one mesh".into()));
    };
    let space = space_1d(&mp, spec.degree, n_el, spec.perturb)?;
    let sp = surrogate_points(&space)?;
    let sol = solve_1d(&lookup(&spec.problem)?, Method::Galerkin, &space)?;
    let dense: Vec<f64> = space
        .knot_vector()
        .elements()
        .flat_map(|(lo, hi)| (0..RESIDUAL_SAMPLES).map(move |k| lo + (hi - lo) * k as f64 / RESIDUAL_SAMPLES as f64))
        .collect();
    let at_dense = residual_superconvergence(&sol, &m.exact, &dense)?;
    let at_sp = residual_superconvergence(&sol, &m.exact, &sp)?;
    let mut rows: Vec<(f64, f64, bool)> = dense.iter().zip(&at_dense.values).map(|(&x, &v)| (x, v, false)).collect();
    rows.extend(sp.iter().zip(&at_sp.values).map(|(&x, &v)| (x, v, true)));
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    let mut csv = String::from("x,residual,is_surrogate_point\n");
    for (x, v, s) in rows {
        writeln!(csv, "{},{},{}", num(x), num(v), u8::from(s)).unwrap();
    }
    let summary = format!(
        "{} / galerkin / p = {} / n_el = {n_el}\n  samples {}  max |residual| {:.3e}\n  surrogate points {}  rms {:.3e}\n",
        spec.problem,
        spec.degree,
        dense.len(),
        at_dense.max_abs,
        sp.len(),
        at_sp.rms
    );
    Ok(Output { csv, summary })
}

/// L2 errors of several schemes on the same meshes.
pub fn compare(cfg: &StudyConfig) -> Result<Output, CliError> {
    let methods = cfg.compare_methods()?;
    let studies = methods
        .iter()
        .map(|&m| Ok(run_study(&cfg.study(Some(m))?)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let first = &studies[0];
    let mut csv = String::from("n_el,h,dof");
    for m in &methods {
        write!(csv, ",L2_{m}").unwrap();
    }
    csv.push('\n');
    for (i, r) in first.reports.iter().enumerate() {
        write!(csv, "{},{},{}", r.n_el, num(r.h), r.dof).unwrap();
        for s in &studies {
            write!(csv, ",{}", num(s.reports[i].l2)).unwrap();
        }
        csv.push('\n');
    }
    let mut summary = format!("{} / p = {}: L2 tail orders\n", first.problem, first.degree);
    for s in &studies {
        writeln!(summary, "  {:<9} {}", s.scheme, tail(s, Norm::L2)).unwrap();
    }
    Ok(Output { csv, summary })
}
