//! Maps each command onto the library and collects a [`Table`].

use triwell::quantum::{build_hamiltonian, full_spectrum, ground_observables};
use triwell::scan::{grid2d, min_bosons_for_agreement, sweep, Deviation, Quantity};
use triwell::semiclassical::{
    critical_point, detect_bifurcation, directional_derivative_test, min_energy_point,
    stationarity_residual, stationary_points, BifurcationPredicate, Branch, ClosedFormBranch,
    Family,
};
use triwell::{enumerate_basis, EnergyUnit, ModelParams, Result};

use crate::config::{Command, CriticalFamily, RunConfig};
use crate::emit::{Cell, Table};

pub const SWEEP_COLUMNS: &[&str] = &[
    "ratio",
    "classical_e",
    "quantum_e",
    "qn1",
    "qn2",
    "qn3",
    "cn1",
    "cn2",
    "cn3",
    "gap1",
    "gap2",
    "degenerate",
    "error",
];

fn nums<const K: usize>(xs: [f64; K]) -> impl Iterator<Item = Cell> {
    xs.into_iter().map(Cell::Num)
}

fn spectrum(p: &ModelParams, levels: bool, per: EnergyUnit) -> Result<Table> {
    p.validate()?;
    let unit = per.divisor(p)? * p.n as f64;
    if levels {
        let basis = enumerate_basis(p.n);
        let s = full_spectrum(&build_hamiltonian(p, &basis)?)?;
        let mut t = Table::new(&["k", "energy"]);
        for (k, e) in s.eigenvalues().iter().enumerate() {
            t.push(vec![Cell::Int(k as i64), Cell::Num(e / unit)]);
        }
        return Ok(t);
    }
    let g = ground_observables(p)?;
    let mut t = Table::new(&["e0", "gap1", "gap2", "qn1", "qn2", "qn3", "degenerate"]);
    let mut row: Vec<Cell> = nums([g.e0_per_particle * p.n as f64 / unit, g.gap1 / unit, g.gap2 / unit]).collect();
    row.extend(nums(g.occ_fractions(p.n)));
    row.push(g.degenerate.into());
    t.push(row);
    Ok(t)
}

fn stationary(p: &ModelParams, per: EnergyUnit) -> Result<Table> {
    p.validate()?;
    let unit = per.divisor(p)?;
    let points = stationary_points(p)?;
    let min = min_energy_point(p)?;
    let mut t = Table::new(&[
        "branch", "cn1", "cn2", "cn3", "phi12", "phi23", "energy", "lambda", "residual", "minimum",
    ]);
    for pt in &points {
        let phase = |k: usize| pt.phases.map_or(Cell::Missing, |ph| Cell::Text(ph[k].to_string()));
        let mut row = vec![Cell::Text(pt.branch.to_string())];
        row.extend(nums(pt.occ));
        row.push(phase(0));
        row.push(phase(1));
        row.push(Cell::Num(pt.energy / unit));
        row.push(pt.lambda.map_or(Cell::Missing, |l| Cell::Num(l / unit)));
        row.push(Cell::Num(stationarity_residual(pt, p)));
        row.push(min.degenerate.iter().any(|m| m.coincides_with(pt)).into());
        t.push(row);
    }
    Ok(t)
}

fn sweep_table(spec: &triwell::scan::SweepSpec, per: EnergyUnit) -> Result<Table> {
    let rows = sweep(spec)?;
    let mut t = Table::new(SWEEP_COLUMNS);
    for r in rows {
        let (unit, unit_err) = match per.divisor(&r.params) {
            Ok(d) => (d, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let n = r.params.n as f64;
        let ratio = if per == EnergyUnit::None { r.ratio } else { r.ratio / unit };
        let mut row: Vec<Cell> =
            nums([ratio, r.classical_e / unit, r.quantum_e / unit]).collect();
        row.extend(nums(r.quantum_occ));
        row.extend(nums(r.classical_occ));
        row.extend(nums([r.gap1 / (n * unit), r.gap2 / (n * unit)]));
        row.push(r.degenerate.into());
        row.push(r.error.or(unit_err).into());
        t.push(row);
    }
    Ok(t)
}

fn grid_table(spec: &triwell::scan::GridSpec, quantity: Quantity) -> Result<Table> {
    let name = match quantity {
        Quantity::N1 => "n1",
        Quantity::N2 => "n2",
        Quantity::N3 => "n3",
    };
    let mut t = Table::new(&["u_over_j", "eps_over_j", "quantity", "value", "error"]);
    for c in grid2d(spec, quantity)? {
        t.push(vec![
            Cell::Num(c.u_over_j),
            Cell::Num(c.eps_over_j),
            name.into(),
            Cell::Num(c.value),
            c.error.into(),
        ]);
    }
    Ok(t)
}

fn critical(family: CriticalFamily, eps: f64) -> Result<Table> {
    let mut t = Table::new(&[
        "family", "analytic", "detected", "d1a", "d1b", "d2a", "d2b", "second_order",
    ]);
    let opt = |x: Option<f64>| x.map_or(Cell::Missing, Cell::Num);
    let (name, fam, detected, branches, at) = match family {
        CriticalFamily::NoTunneling => (
            "j0",
            Family::NoTunneling,
            detect_bifurcation(
                |u| ModelParams { u, j: 0.0, eps: 1.0, n: 1 },
                0.0,
                1.0,
                BifurcationPredicate::BranchCount,
            )?,
            (Branch::X4, Branch::X5),
            (0.25, 1.0),
        ),
        CriticalFamily::NoTilt => (
            "eps0",
            Family::NoTilt,
            detect_bifurcation(
                |u| ModelParams { u, j: 1.0, eps: 0.0, n: 1 },
                -2.0,
                0.0,
                BifurcationPredicate::DegenerateMinimum,
            )?,
            (Branch::X3, Branch::X4),
            (-0.5, 1.0),
        ),
        CriticalFamily::Tilted => {
            let detected = detect_bifurcation(
                |u| ModelParams { u, j: 1.0, eps, n: 1 },
                -3.0,
                1.0,
                BifurcationPredicate::DegenerateMinimum,
            )?;
            let mut row = vec!["tilted".into(), Cell::Missing, opt(detected)];
            row.extend(std::iter::repeat_n(Cell::Missing, 5));
            t.push(row);
            return Ok(t);
        }
    };
    let d = directional_derivative_test(
        &ClosedFormBranch::new(fam, branches.0),
        &ClosedFormBranch::new(fam, branches.1),
        at,
        (1.0, 0.0),
    )?;
    let mut row = vec![name.into(), Cell::Num(critical_point(fam)), opt(detected)];
    row.extend(nums([d.d1a, d.d1b, d.d2a, d.d2b]));
    row.push(d.second_order.into());
    t.push(row);
    Ok(t)
}

fn correspond(
    spec: &triwell::scan::SweepSpec,
    deviation: Deviation,
    tol: f64,
    n_max: u64,
) -> Result<Table> {
    let n = min_bosons_for_agreement(&spec.points(), deviation, tol, n_max)?;
    let name = match deviation {
        Deviation::Energy => "energy",
        Deviation::Occupations => "occupations",
    };
    let mut t = Table::new(&["deviation", "tol", "n_max", "n_min"]);
    t.push(vec![name.into(), Cell::Num(tol), Cell::Int(n_max as i64), Cell::Int(n as i64)]);
    Ok(t)
}

/// Runs the configured command. Errors are numerical failures.
pub fn execute(config: &RunConfig) -> Result<Table> {
    match &config.command {
        Command::Spectrum { params, levels } => spectrum(params, *levels, config.per),
        Command::Stationary { params } => stationary(params, config.per),
        Command::Sweep { spec } => sweep_table(spec, config.per),
        Command::Grid { spec, quantity } => grid_table(spec, *quantity),
        Command::Critical { family, eps } => critical(*family, *eps),
        Command::Correspond { spec, deviation, tol, n_max } => {
            correspond(spec, *deviation, *tol, *n_max)
        }
    }
}
