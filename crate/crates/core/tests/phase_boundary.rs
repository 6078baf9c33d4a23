use kuramotoq::classical::{classical_jc_extended, noiseless_jc};
use kuramotoq::phase_diagram::{
    critical_temperature, phase_diagram, sweep_sigma, sweep_temperature, BoundaryPoint, BoundaryStatus,
    CriticalTemperature, TemperaturePoint,
};
use kuramotoq::quantum::{Prefactor, QuantumModel};
use kuramotoq::{FrequencyDistribution, PhysicalParams, TabulatedDensity};

fn model(mu: f64) -> QuantumModel {
    QuantumModel::new(PhysicalParams::new(mu, 0.0).unwrap())
}

fn gauss(sigma: f64) -> FrequencyDistribution {
    FrequencyDistribution::gaussian(sigma).unwrap()
}

#[test]
fn temperature_sweep_shape() {
    let temps = [0.0, 0.02, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0];
    let sweep = sweep_temperature(&model(7.0), &gauss(2.0), &temps, Prefactor::AsPrinted).unwrap();
    assert!(sweep.warnings.is_empty(), "{:?}", sweep.warnings);
    for p in &sweep.points {
        assert!(p.jc.is_finite() && p.jc > 0.0);
        assert!(p.ratio >= 1.0, "ratio {} at temp {}", p.ratio, p.temp);
        assert_eq!(p.inv_jc, 1.0 / p.jc);
    }
    // The quantum excess over the classical curve grows toward zero temperature.
    assert!(sweep.points.windows(2).all(|w| w[0].ratio > w[1].ratio));
    let hot = sweep.points.last().unwrap();
    assert!((hot.jc / (2.0 * hot.temp) - 1.0).abs() < 0.05, "J_C = {} at temp {}", hot.jc, hot.temp);
    assert_eq!(sweep.points[0].jc_classical_ext, noiseless_jc(&gauss(2.0)).unwrap());
}

#[test]
fn ratio_exceeds_one_across_masses() {
    let temps = [0.05, 0.1, 0.5, 1.0, 5.0, 10.0];
    for mu in [5.0, 7.0, 10.0] {
        let sweep = sweep_temperature(&model(mu), &gauss(2.0), &temps, Prefactor::AsPrinted).unwrap();
        for p in &sweep.points {
            assert!(p.ratio >= 1.0, "mu {mu} temp {}: {}", p.temp, p.ratio);
            assert_eq!(p.jc_classical_ext, classical_jc_extended(&gauss(2.0), p.temp).unwrap());
        }
        assert!(sweep.points[0].ratio > sweep.points[4].ratio);
    }
}

#[test]
fn wider_distributions_are_harder_to_synchronize() {
    let sigmas = [0.5, 1.0, 2.0, 4.0];
    let temps = [0.0, 1.0, 5.0];
    let (sweep, dots) = sweep_sigma(&model(7.0), &sigmas, &temps, Prefactor::AsPrinted).unwrap();
    assert!(sweep.warnings.is_empty());
    for &t in &temps {
        let row: Vec<f64> = sweep.points.iter().filter(|p| p.temp == t).map(|p| p.jc).collect();
        assert_eq!(row.len(), sigmas.len());
        assert!(row.windows(2).all(|w| w[1] > w[0]), "temp {t}: {row:?}");
    }
    let two = dots.iter().find(|d| d.sigma == 2.0).unwrap();
    assert!((two.jc_noiseless - 4.0 * (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-12);
    // Table reuse across widths matches independent evaluation up to the
    // interpolation error of differently spaced lag grids.
    let direct = model(7.0).at_temp(1.0).quantum_jc(&gauss(1.0), Prefactor::AsPrinted).unwrap();
    let tabled = sweep.points.iter().find(|p| p.temp == 1.0 && p.sigma == 1.0).unwrap().jc;
    assert!((direct - tabled).abs() < 1e-5 * direct);
}

#[test]
fn weak_coupling_never_synchronizes() {
    let m = model(7.0);
    let g = gauss(2.0);
    let jc0 = m.quantum_jc(&g, Prefactor::AsPrinted).unwrap();
    assert_eq!(
        critical_temperature(0.5 * jc0, &m, &g, Prefactor::AsPrinted).unwrap(),
        CriticalTemperature::NoTransition
    );
}

#[test]
fn boundary_rises_with_coupling_and_round_trips() {
    let m = model(7.0);
    let g = gauss(2.0);
    let diagram = phase_diagram(&m, &g, &[2.0, 4.0, 5.0, 7.0, 10.0, 20.0], Prefactor::AsPrinted).unwrap();
    assert_eq!(diagram.points[0].status, BoundaryStatus::NoTransition);
    assert_eq!(diagram.points[0].temp_c, None);
    let ordered: Vec<f64> = diagram.points.iter().filter_map(|p| p.temp_c).collect();
    assert!(ordered.len() >= 4);
    assert!(ordered.windows(2).all(|w| w[1] > w[0]), "{ordered:?}");
    for temp0 in [0.2, 1.0, 5.0] {
        let j = m.at_temp(temp0).quantum_jc(&g, Prefactor::AsPrinted).unwrap();
        let tc = critical_temperature(j, &m, &g, Prefactor::AsPrinted).unwrap().temp().unwrap();
        assert!((tc / temp0 - 1.0).abs() < 1e-3, "{tc} vs {temp0}");
    }
}

#[test]
fn sweep_csv_reads_back_losslessly() {
    let sweep = sweep_temperature(&model(7.0), &gauss(2.0), &[0.0, 0.3, 2.0], Prefactor::ExactSine).unwrap();
    let mut buf = Vec::new();
    sweep.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("temp,jc,jc_classical_ext,ratio,inv_jc_temp_units,"));
    let back: Vec<TemperaturePoint> = csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(back, sweep.points);

    let diagram = phase_diagram(&model(7.0), &gauss(2.0), &[1.0, 30.0], Prefactor::AsPrinted).unwrap();
    let mut buf = Vec::new();
    diagram.write_csv(&mut buf).unwrap();
    let back: Vec<BoundaryPoint> = csv::Reader::from_reader(&buf[..]).deserialize().collect::<Result<_, _>>().unwrap();
    assert_eq!(back, diagram.points);
}

#[test]
fn tabulated_gaussian_tracks_the_closed_form() {
    let sigma = 2.0;
    let pts: Vec<(f64, f64)> = (0..=400)
        .map(|k| {
            let w = k as f64 * 0.04;
            (w, (-w * w / (2.0 * sigma * sigma)).exp())
        })
        .collect();
    let table = FrequencyDistribution::Tabulated(TabulatedDensity::from_points(&pts).unwrap());
    let m = model(7.0).at_temp(1.0);
    let a = m.quantum_jc(&gauss(sigma), Prefactor::AsPrinted).unwrap();
    let b = m.quantum_jc(&table, Prefactor::AsPrinted).unwrap();
    assert!((a - b).abs() < 1e-3 * a, "{a} vs {b}");
}
