//! CSV and JSON report schemas. Floats are printed in shortest round-trip
//! form so identical inputs always produce byte-identical output.

use crate::chain::{ChainRecord, ChainStep, Choice, SignCase, Termination};
use crate::plmap::{IntervalLabel, OrbitReport};
use crate::triangle::Triangle;
use num_rational::BigRational;
use serde_json::json;

fn fmt(x: f64) -> String {
    format!("{x}")
}

fn choice_str(c: Choice) -> &'static str {
    match c {
        Choice::Smaller => "smaller",
        Choice::Larger => "larger",
    }
}

fn sign_str(s: SignCase) -> &'static str {
    match s {
        SignCase::PlusOnSide => "plus_on_side",
        SignCase::MinusOnExtension => "minus_on_extension",
    }
}

pub const CHAIN_CSV_HEADER: &str = "step,vertex,radius,u,phi,sign_case,choice,center_x,center_y";

/// Fixed chain schema. `phi` is present only when the semiperimeter is known
/// (triangles) and `u^2 <= p`; vertices print 1-based. `degrees` converts the
/// phi column on the way out.
pub fn chain_csv(steps: &[ChainStep], semiperimeter: Option<f64>, degrees: bool) -> String {
    let mut out = String::from(CHAIN_CSV_HEADER);
    out.push('\n');
    for s in steps {
        let c = &s.circle;
        let phi = semiperimeter
            .and_then(|p| crate::plmap::phi_from_u(c.u, p).ok())
            .map(|phi| fmt(if degrees { phi.to_degrees() } else { phi }))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            s.index,
            c.vertex + 1,
            fmt(c.radius),
            fmt(c.u),
            phi,
            s.sign_case.map(sign_str).unwrap_or(""),
            s.choice.map(choice_str).unwrap_or(""),
            fmt(c.center.x),
            fmt(c.center.y),
        ));
    }
    out
}

/// Summary lines printed alongside the data.
pub fn chain_report_lines<S>(record: &ChainRecord<S>) -> String {
    let opt = |v: Option<usize>| v.map_or_else(|| "undetected".to_string(), |x| x.to_string());
    format!(
        "termination={}\npre_period={}\nperiod={}\n",
        record.termination,
        opt(record.pre_period),
        opt(record.period),
    )
}

pub fn chain_json(
    steps: &[ChainStep],
    semiperimeter: Option<f64>,
    degrees: bool,
    termination: Termination,
    pre_period: Option<usize>,
    period: Option<usize>,
) -> String {
    let rows: Vec<_> = steps
        .iter()
        .map(|s| {
            let c = &s.circle;
            json!({
                "step": s.index,
                "vertex": c.vertex + 1,
                "radius": c.radius,
                "u": c.u,
                "phi": semiperimeter
                    .and_then(|p| crate::plmap::phi_from_u(c.u, p).ok())
                    .map(|phi| if degrees { phi.to_degrees() } else { phi }),
                "sign_case": s.sign_case.map(sign_str),
                "choice": s.choice.map(choice_str),
                "center": [c.center.x, c.center.y],
            })
        })
        .collect();
    let doc = json!({
        "steps": rows,
        "termination": termination.to_string(),
        "pre_period": pre_period,
        "period": period,
    });
    serde_json::to_string_pretty(&doc).expect("chain report serializes")
}

fn angles_out(values: [f64; 3], degrees: bool) -> Vec<f64> {
    values
        .iter()
        .map(|v| if degrees { v.to_degrees() } else { *v })
        .collect()
}

pub fn triangle_json(tri: &Triangle, degrees: bool) -> String {
    let doc = json!({
        "sides": tri.sides(),
        "semiperimeter": tri.semiperimeter(),
        "half_angles": angles_out(tri.half_angles(), degrees),
        "betas": angles_out(tri.betas(), degrees),
        "couplings": tri.couplings(),
        "tangent_lengths": tri.tangent_lengths(),
        "vertices": tri.vertices().map(|p| [p.x, p.y]),
        "angle_unit": if degrees { "degrees" } else { "radians" },
    });
    serde_json::to_string_pretty(&doc).expect("triangle report serializes")
}

pub fn triangle_csv(tri: &Triangle, degrees: bool) -> String {
    let tri3 =
        |name: &str, v: [f64; 3]| format!("{name},{},{},{}\n", fmt(v[0]), fmt(v[1]), fmt(v[2]));
    let mut out = String::from("quantity,v1,v2,v3\n");
    out.push_str(&tri3("side", tri.sides()));
    out.push_str(&format!("semiperimeter,{},,\n", fmt(tri.semiperimeter())));
    let conv = |v: [f64; 3]| {
        if degrees {
            [v[0].to_degrees(), v[1].to_degrees(), v[2].to_degrees()]
        } else {
            v
        }
    };
    out.push_str(&tri3("half_angle", conv(tri.half_angles())));
    out.push_str(&tri3("beta", conv(tri.betas())));
    out.push_str(&tri3("coupling", tri.couplings()));
    out.push_str(&tri3("tangent_length", tri.tangent_lengths()));
    let v = tri.vertices();
    out.push_str(&tri3("vertex_x", [v[0].x, v[1].x, v[2].x]));
    out.push_str(&tri3("vertex_y", [v[0].y, v[1].y, v[2].y]));
    out
}

fn label_str(l: IntervalLabel) -> String {
    l.to_string()
}

pub fn orbit_csv_f64(report: &OrbitReport<f64>) -> String {
    let mut out = String::from("step,x,interval\n");
    for (i, (x, l)) in report
        .trajectory
        .iter()
        .zip(&report.interval_trace)
        .enumerate()
    {
        out.push_str(&format!("{i},{},{}\n", fmt(*x), label_str(*l)));
    }
    out
}

pub fn orbit_csv_exact(report: &OrbitReport<BigRational>) -> String {
    let mut out = String::from("step,x,interval\n");
    for (i, (x, l)) in report
        .trajectory
        .iter()
        .zip(&report.interval_trace)
        .enumerate()
    {
        out.push_str(&format!("{i},{x},{}\n", label_str(*l)));
    }
    out
}

pub fn orbit_report_lines_f64(report: &OrbitReport<f64>) -> String {
    let cycle: Vec<String> = report.cycle.iter().map(|x| fmt(*x)).collect();
    format!(
        "pre_period={}\nperiod={}\ncycle={}\n",
        report.pre_period,
        report.period,
        cycle.join(",")
    )
}

pub fn orbit_report_lines_exact(report: &OrbitReport<BigRational>) -> String {
    let cycle: Vec<String> = report.cycle.iter().map(|x| x.to_string()).collect();
    format!(
        "pre_period={}\nperiod={}\ncycle={}\n",
        report.pre_period,
        report.period,
        cycle.join(",")
    )
}

pub fn malfatti_json(tri: &Triangle, radii: [f64; 3], residuals: [f64; 3]) -> String {
    let doc = json!({
        "sides": tri.sides(),
        "radii": radii,
        "pairwise_tangency_residuals": residuals,
    });
    serde_json::to_string_pretty(&doc).expect("malfatti report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{circle_from_phi, run_chain, Policy};

    #[test]
    fn chain_csv_schema() {
        let tri = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let record = run_chain(
            &tri,
            circle_from_phi(&tri, 0, 0.3),
            &Policy::AlwaysSmaller,
            100,
        );
        let csv = chain_csv(&record.steps, Some(tri.semiperimeter()), false);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CHAIN_CSV_HEADER);
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "1");
        assert_eq!(first[1], "1"); // vertex printed 1-based
        assert_eq!(first[5], ""); // no sign case on the initial circle
        assert_eq!(first[6], "");
        assert_eq!(csv.lines().count(), record.steps.len() + 1);

        let lines = chain_report_lines(&record);
        assert!(lines.contains("pre_period=2"));
        assert!(lines.contains("period=6"));

        // identical input, identical bytes
        let record2 = run_chain(
            &tri,
            circle_from_phi(&tri, 0, 0.3),
            &Policy::AlwaysSmaller,
            100,
        );
        assert_eq!(
            csv,
            chain_csv(&record2.steps, Some(tri.semiperimeter()), false)
        );
    }

    #[test]
    fn triangle_reports() {
        let tri = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let json = triangle_json(&tri, false);
        for key in [
            "semiperimeter",
            "half_angles",
            "betas",
            "couplings",
            "tangent_lengths",
        ] {
            assert!(json.contains(key), "missing {key}");
        }
        let csv = triangle_csv(&tri, false);
        assert!(csv.starts_with("quantity,v1,v2,v3\n"));
        assert!(csv.contains("semiperimeter,6,,"));

        let deg = triangle_json(&tri, true);
        assert!(deg.contains("45")); // half-angle at the right angle, in degrees
    }
}
