use triwell::scan::{
    grid2d, linspace, min_bosons_for_agreement, sweep, Axis, Deviation, GridSpec, Quantity,
    SweepSpec,
};
use triwell::semiclassical::stationary_points_eps0;
use triwell::ModelParams;

fn untilted(u: f64, n: u64) -> ModelParams {
    ModelParams { u, j: 1.0, eps: 0.0, n }
}

fn max_energy_deviation(n: u64) -> f64 {
    let spec = SweepSpec { axis: Axis::U, start: 0.0, end: 3.0, steps: 7, fixed: untilted(0.0, n) };
    sweep(&spec).unwrap().iter().map(|r| r.energy_deviation()).fold(0.0, f64::max)
}

#[test]
fn repulsive_agreement_improves_with_n() {
    let (d10, d60) = (max_energy_deviation(10), max_energy_deviation(60));
    assert!(d60 < d10, "{d60} !< {d10}");
}

#[test]
fn rows_are_consistent() {
    let spec = SweepSpec {
        axis: Axis::U,
        start: -3.0,
        end: 3.0,
        steps: 25,
        fixed: ModelParams { u: 0.0, j: 1.0, eps: 0.2, n: 8 },
    };
    for r in sweep(&spec).unwrap() {
        assert!(r.error.is_none());
        assert!((r.quantum_occ.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!((r.classical_occ.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let s = r.classical_occ[0] - r.classical_occ[1] + r.classical_occ[2];
        let bound = r.classical_e + r.params.u * (1.0 - s * s) / r.params.n as f64;
        assert!(r.quantum_e <= bound + 1e-9, "{r:?}");
    }
}

#[test]
fn output_independent_of_thread_count() {
    let spec = SweepSpec {
        axis: Axis::Eps,
        start: 0.0,
        end: 1.0,
        steps: 17,
        fixed: ModelParams { u: -1.0, j: 1.0, eps: 0.0, n: 6 },
    };
    let grid = GridSpec { u_range: (-3.0, 3.0), eps_range: (0.0, 1.0), steps: (9, 7) };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| (sweep(&spec).unwrap(), grid2d(&grid, Quantity::N1).unwrap()))
    };
    let (a_rows, a_grid) = run(1);
    let (b_rows, b_grid) = run(4);
    assert_eq!(format!("{a_rows:?}"), format!("{b_rows:?}"));
    assert_eq!(format!("{a_grid:?}"), format!("{b_grid:?}"));
}

#[test]
fn grid_mirror_symmetry() {
    let spec = GridSpec { u_range: (-3.0, 3.0), eps_range: (-0.6, 0.6), steps: (13, 13) };
    let n1 = grid2d(&spec, Quantity::N1).unwrap();
    let n3 = grid2d(&spec, Quantity::N3).unwrap();
    let (nu, ne) = spec.steps;
    for ie in 0..ne {
        for iu in 0..nu {
            let a = &n1[ie * nu + iu];
            let b = &n3[(ne - 1 - ie) * nu + iu];
            assert!((a.eps_over_j + b.eps_over_j).abs() < 1e-12);
            assert!((a.value - b.value).abs() < 1e-9, "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn attractive_grid_keeps_middle_well_nearly_empty() {
    let spec = GridSpec { u_range: (-3.0, -0.55), eps_range: (0.01, 0.99), steps: (15, 15) };
    for c in grid2d(&spec, Quantity::N2).unwrap() {
        let x4 = stationary_points_eps0(c.u_over_j, 1.0).unwrap()[3].occ[1];
        assert!(c.value <= x4 + 1e-9, "{c:?}");
        if c.u_over_j <= -2.0 {
            assert!(c.value < 0.02, "{c:?}");
        }
    }
}

#[test]
fn repulsive_grid_half_fills_middle_well() {
    let spec = GridSpec { u_range: (1.0, 3.0), eps_range: (0.0, 0.099), steps: (9, 9) };
    for c in grid2d(&spec, Quantity::N2).unwrap() {
        assert!((c.value - 0.5).abs() < 1e-2, "{c:?}");
    }
}

#[test]
fn attractive_column_migrates_to_first_well() {
    let spec = GridSpec { u_range: (-2.0, -1.0), eps_range: (1e-6, 0.3), steps: (2, 2) };
    let cells = grid2d(&spec, Quantity::N1).unwrap();
    assert!((cells[0].value - 0.5).abs() < 0.05, "{:?}", cells[0]);
    assert!(cells[2].value > 0.95, "{:?}", cells[2]);
}

#[test]
fn agreement_thresholds() {
    let untilted_repulsive: Vec<_> = linspace(0.0, 0.95, 20).into_iter().map(|u| untilted(u, 1)).collect();
    assert_eq!(min_bosons_for_agreement(&untilted_repulsive, Deviation::Occupations, 1e-2, 4).unwrap(), 1);

    let free: Vec<_> =
        linspace(-3.0, 3.0, 13).into_iter().map(|j| ModelParams { u: 0.0, j, eps: 1.0, n: 1 }).collect();
    assert_eq!(min_bosons_for_agreement(&free, Deviation::Energy, 1e-8, 4).unwrap(), 1);
    assert_eq!(min_bosons_for_agreement(&free, Deviation::Occupations, 1e-8, 4).unwrap(), 1);
}

#[test]
fn strongly_attractive_untilted_energy_needs_ten_bosons() {
    let p = untilted(-3.0, 2);
    let spec = SweepSpec { axis: Axis::U, start: -3.0, end: -3.0, steps: 2, fixed: p };
    let row = &sweep(&spec).unwrap()[0];
    assert!((row.energy_deviation() - 0.21944230439866175).abs() < 1e-9, "{}", row.energy_deviation());
    assert_eq!(min_bosons_for_agreement(&[p], Deviation::Energy, 1e-2, 20).unwrap(), 10);
    // A tilt improves two-boson agreement about fourfold (0.055 vs 0.219).
    let tilted = ModelParams { eps: 0.5, ..p };
    let spec = SweepSpec { fixed: tilted, ..spec };
    let d = sweep(&spec).unwrap()[0].energy_deviation();
    assert!(d < row.energy_deviation() / 3.0, "{d}");
}

#[test]
fn not_found_is_an_error() {
    let p = untilted(-3.0, 1);
    assert!(min_bosons_for_agreement(&[p], Deviation::Energy, 1e-6, 3).is_err());
}
