use ckcontact::calculus::fields::{Chart, TimeDependentField};
use ckcontact::calculus::integrate::integrate;
use ckcontact::calculus::parse::parse_coeff;
use ckcontact::contact::contact_structure;
use ckcontact::fibration::reeb_flow;
use ckcontact::geometry::charts::{embed_parallel, embed_polar, polar_from_ambient};
use ckcontact::geometry::{connection_polar, KappaTriple};

fn main() {
    // 1. Geodesic residual investigation.
    for (k, name) in KappaTriple::nine() {
        let c = [0.5, 0.7, 0.3];
        let x = embed_polar(k, &c).unwrap();
        let h = 5e-4;
        let pol = |t: f64| polar_from_ambient(k, &reeb_flow(k, &x, t));
        let (pm, p0, pp) = (pol(-h), pol(0.0), pol(h));
        let vel: Vec<f64> = (0..3).map(|i| (pp[i] - pm[i]) / (2.0 * h)).collect();
        let acc: Vec<f64> = (0..3)
            .map(|i| (pp[i] - 2.0 * p0[i] + pm[i]) / (h * h))
            .collect();
        let conn = connection_polar(k, &p0).unwrap();
        println!(
            "{name:>4}: residual {:.3e}  p0 {:?} vel {vel:?}",
            conn.geodesic_residual(&acc, &vel),
            p0
        );
    }

    // 2. Reeb flow vs integration at several tolerances.
    for tol in [1e-10, 1e-12, 1e-13] {
        let mut worst_all: f64 = 0.0;
        for (k, _) in KappaTriple::nine() {
            let cs = contact_structure(k, Chart::Ambient4);
            let reeb_t =
                TimeDependentField::new(vec![(parse_coeff("1").unwrap(), cs.reeb.clone())])
                    .unwrap();
            let x0 = embed_parallel(k, &[0.3, 0.25, -0.35]);
            let traj = integrate(&reeb_t, &x0, 0.0, 5.0, tol, &[]).unwrap();
            let mut worst: f64 = 0.0;
            for s in &traj.samples {
                let closed = reeb_flow(k, &x0, s.t);
                worst = worst
                    .max(ckcontact::calculus::max_abs_diff(&closed, &s.state));
            }
            worst_all = worst_all.max(worst);
        }
        println!("tol {tol:.0e}: worst flow deviation {worst_all:.3e}");
    }

    // 3. sp4-ck ambient trajectory failure.
    let k = KappaTriple::new(1.0, 1.0, 1.0);
    match ckcontact::verify::sp4ck_ambient_trajectory(k, 10.0, 1e-10) {
        Ok(t) => println!("sp4-ck ok, drift {:.3e}", t.max_drift(0)),
        Err(e) => println!("sp4-ck error: {e}"),
    }
}
