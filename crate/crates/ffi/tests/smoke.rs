//! Exercises the C ABI end to end from Rust.

use sixcircles_ffi::*;

#[test]
fn triangle_lifecycle_and_fields() {
    unsafe {
        let mut t = std::ptr::null_mut();
        assert_eq!(sc_triangle_new(3.0, 4.0, 5.0, &mut t), ScStatus::Ok);

        let mut p = 0.0;
        assert_eq!(sc_triangle_semiperimeter(t, &mut p), ScStatus::Ok);
        assert_eq!(p, 6.0);

        let mut betas = [0.0; 3];
        assert_eq!(sc_triangle_betas(t, betas.as_mut_ptr()), ScStatus::Ok);
        assert!((betas[2] - 1.150262).abs() < 1e-5);

        let mut tl = [0.0; 3];
        assert_eq!(
            sc_triangle_tangent_lengths(t, tl.as_mut_ptr()),
            ScStatus::Ok
        );
        assert_eq!(tl, [3.0, 2.0, 1.0]);

        let mut vertices = [0.0; 6];
        assert_eq!(sc_triangle_vertices(t, vertices.as_mut_ptr()), ScStatus::Ok);
        assert_eq!(&vertices[..4], &[0.0, 0.0, 5.0, 0.0]);

        let (mut a, mut b) = (0.0, 0.0);
        assert_eq!(sc_triangle_map_params(t, &mut a, &mut b), ScStatus::Ok);
        assert!(1.0 <= a && a <= b && b < a + 1.0);

        sc_triangle_free(t);
    }
}

#[test]
fn invalid_triangles_are_rejected() {
    unsafe {
        let mut t = std::ptr::null_mut();
        assert_eq!(
            sc_triangle_new(1.0, 1.0, 3.0, &mut t),
            ScStatus::TriangleInequality
        );
        assert_eq!(
            sc_triangle_new(0.0, 1.0, 1.0, &mut t),
            ScStatus::NonPositiveSide
        );
        assert_eq!(
            sc_triangle_new(1.0, 1.0, 1.0, std::ptr::null_mut()),
            ScStatus::NullArgument
        );
    }
}

#[test]
fn chain_round_trip() {
    unsafe {
        let mut t = std::ptr::null_mut();
        sc_triangle_new(3.0, 4.0, 5.0, &mut t);
        let mut c = std::ptr::null_mut();
        assert_eq!(
            sc_chain_run_phi(t, 1, 0.3, ScPolicy::Smaller, 0, 100, &mut c),
            ScStatus::Ok
        );
        assert_eq!(sc_chain_termination(c), ScTermination::CycleDetected);
        assert_eq!(sc_chain_pre_period(c), 2);
        assert_eq!(sc_chain_period(c), 6);
        assert!(sc_chain_len(c) >= 9);

        let mut step = ScStep {
            vertex: 0,
            radius: 0.0,
            u: 0.0,
            phi: 0.0,
            center_x: 0.0,
            center_y: 0.0,
            choice: 0,
            sign_case: 0,
        };
        assert_eq!(sc_chain_step(c, 0, &mut step), ScStatus::Ok);
        assert_eq!(step.vertex, 1);
        assert_eq!(step.choice, -1);
        assert!((step.phi - 0.3).abs() < 1e-12);
        assert_eq!(
            sc_chain_step(c, sc_chain_len(c), &mut step),
            ScStatus::IndexOutOfRange
        );

        // C9 equals C3
        let mut c3 = step;
        let mut c9 = step;
        sc_chain_step(c, 2, &mut c3);
        sc_chain_step(c, 8, &mut c9);
        assert!((c3.radius - c9.radius).abs() <= 1e-9);

        sc_chain_free(c);
        sc_triangle_free(t);
    }
}

#[test]
fn malfatti_and_map() {
    unsafe {
        let mut t = std::ptr::null_mut();
        sc_triangle_new(1.0, 1.0, 1.0, &mut t);
        let mut radii = [0.0; 3];
        assert_eq!(sc_malfatti_radii(t, radii.as_mut_ptr()), ScStatus::Ok);
        let expected = (3.0f64.sqrt() - 1.0) / 4.0;
        for r in radii {
            assert!((r - expected).abs() <= 1e-9);
        }
        sc_triangle_free(t);

        let mut y = 0.0;
        assert_eq!(sc_map_eval(3.6, 4.2, 0.0, &mut y), ScStatus::Ok);
        assert!((y - 1.6).abs() < 1e-12);
        assert_eq!(sc_map_eval(2.0, 0.5, 0.0, &mut y), ScStatus::MapDomain);

        let mut x = 0.0;
        assert_eq!(sc_map_fixed_point(3.6, 4.2, &mut x), ScStatus::Ok);
        assert!((x - 0.8).abs() < 1e-12);

        let (mut pre, mut period) = (0usize, 0u32);
        assert_eq!(
            sc_map_orbit(1.0, 1.99, 0.01, 1000, &mut pre, &mut period),
            ScStatus::Ok
        );
        assert_eq!((pre, period), (99, 2));
    }
}

#[test]
fn version_and_header() {
    let version = unsafe { std::ffi::CStr::from_ptr(sc_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));

    // the build script keeps the C header alongside the crate
    let header_path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/sixcircles.h");
    let header = std::fs::read_to_string(header_path).expect("generated header exists");
    for symbol in [
        "sc_triangle_new",
        "sc_chain_run_phi",
        "sc_chain_step",
        "sc_malfatti_radii",
        "sc_map_orbit",
        "typedef struct ScTriangle ScTriangle;",
        "typedef struct ScChain ScChain;",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
