use super::*;
use crate::linalg::RatMatrix;

fn p(s: &str, n: usize) -> Expr {
    Expr::parse(s, n).unwrap()
}

fn space(name: &str) -> ModelSpace {
    ModelSpace::parse(name).unwrap()
}

fn comps(srcs: &[&str], n: usize) -> Vec<Expr> {
    srcs.iter().map(|s| p(s, n)).collect()
}

fn expr(c: &Cleared) -> Expr {
    c.as_expr().expect("no divisor").clone()
}

#[test]
fn gradients() {
    let g = metric_gradient(&space("euclid:2"), &p("x^2 + y^2", 2)).unwrap();
    assert_eq!(g.iter().map(expr).collect::<Vec<_>>(), comps(&["2*x", "2*y"], 2));
    let g = metric_gradient(&space("nil"), &p("z", 3)).unwrap();
    assert_eq!(g.iter().map(expr).collect::<Vec<_>>(), comps(&["0", "x", "1 + x^2"], 3));
    let g = metric_gradient(&space("sol"), &p("x", 3)).unwrap();
    assert_eq!(g.iter().map(expr).collect::<Vec<_>>(), comps(&["exp(-2*z)", "0", "0"], 3));
}

#[test]
fn energy_examples() {
    let e4 = space("euclid:4");
    let id = MapSpec::linear(RatMatrix::identity(4)).unwrap();
    assert_eq!(expr(&energy_density(&e4, &e4, &id).unwrap()), Expr::from_i64(4, 4));

    let trig = comps(&["cos(x) + cos(y) + cos(z)", "sin(x) + sin(y) + sin(z)"], 3);
    let e = energy_density_of(&space("euclid:3"), &space("euclid:2"), &trig).unwrap();
    assert_eq!(expr(&e), Expr::from_i64(3, 3));

    let nil_map = comps(&["z - x*y/2", "2*z - x*y"], 3);
    let e = energy_density_of(&space("nil"), &space("euclid:2"), &nil_map).unwrap();
    assert_eq!(expr(&e), p("5 + (5/4)*x^2 + (5/4)*y^2", 3));

    let semi = space("semi-euclid:2:-+");
    let q = comps(&["12*x^2 + 12*y^2", "13*x^2 + 10*x*y + 13*y^2"], 2);
    assert!(energy_density_of(&semi, &semi, &q).unwrap().is_zero());
}

#[test]
fn tension_examples() {
    let e1 = space("euclid:1");
    let r = infinity_tension_of(&e1, &e1, &comps(&["x^2"], 1)).unwrap();
    // T = φ'·E' = 2x · 8x
    assert_eq!(expr(&r.infinity_tension[0]), p("16*x^2", 1));
    match r.verdict {
        TensionVerdict::NonZero { witness, component, value } => {
            assert_eq!(witness, vec![rat(1, 1)]);
            assert_eq!(component, 0);
            assert_eq!(value, 16.0);
        }
        TensionVerdict::Zero => panic!("x^2 is not infinity-harmonic"),
    }

    let r = infinity_tension_of(&space("nil"), &space("euclid:2"), &comps(&["y", "z"], 3)).unwrap();
    assert!(r.verdict.is_zero());
    assert_eq!(r.mode, Mode::Exact);
    assert_eq!(r.energy_density.unwrap().to_string(), "2 + x^2");

    let sol = space("sol");
    let r = infinity_tension_of(&space("euclid:1"), &sol, &comps(&["x^2", "0", "0"], 1)).unwrap();
    match r.verdict {
        TensionVerdict::NonZero { witness, component, value } => {
            let v = r.infinity_tension[component].evaluate(&to_f64_point(&witness)).unwrap();
            assert!((v - value).abs() < 1e-12 && v.abs() > TOLERANCE);
        }
        TensionVerdict::Zero => panic!("nonconstant quadratic into Sol"),
    }
}

#[test]
fn numeric_fallback() {
    let sol = space("sol");
    let r = infinity_tension_of(&space("euclid:1"), &sol, &comps(&["0", "0", "cos(x)"], 1)).unwrap();
    assert_eq!(r.mode, Mode::NumericSampled);
    assert!(!r.verdict.is_zero());

    let nil_map = comps(&["z - x*y/2", "2*z - x*y"], 3);
    let res = numeric_residual(&space("nil"), &space("euclid:2"), &nil_map, SAMPLE_POINTS, 1).unwrap();
    assert!(res < TOLERANCE, "{res}");
}

#[test]
fn scalar_operators() {
    let e3 = space("euclid:3");
    assert!(infinity_laplacian(&e3, &p("2*x - y + 5*z", 3)).unwrap().is_zero());
    let e1 = space("euclid:1");
    assert_eq!(expr(&infinity_laplacian(&e1, &p("x^2", 1)).unwrap()), p("8*x^2", 1));
    assert_eq!(euclidean_infinity_laplacian(&p("x^2", 1)).unwrap(), p("8*x^2", 1));

    let nil = space("nil");
    assert!(infinity_laplacian(&nil, &p("3*y - 2*z", 3)).unwrap().is_zero());
    assert!(!infinity_laplacian(&nil, &p("x + z", 3)).unwrap().is_zero());
    for u in ["x*y + z^2", "x + z", "x^2*z - y"] {
        for s in ["nil", "sol", "sphere:3", "euclid:3"] {
            let sp = space(s);
            let u = p(u, 3);
            assert!(infinity_laplacian(&sp, &u).unwrap().equivalent(&hessian_form(&sp, &u).unwrap()), "{s}");
        }
    }
}

#[test]
fn p_laplacian_examples() {
    let e2 = space("euclid:2");
    assert_eq!(expr(&p_laplacian(&e2, &p("x^2 + y^2", 2), 2).unwrap()), Expr::from_i64(2, 4));
    assert!(p_laplacian(&e2, &p("x - 3*y", 2), 4).unwrap().is_zero());
    let e1 = space("euclid:1");
    assert_eq!(expr(&p_laplacian(&e1, &p("x^2", 1), 4).unwrap()), p("24*x^2", 1));
    assert!(matches!(p_laplacian(&e1, &p("x", 1), 3), Err(Error::Unsupported(_))));
    let v = p_laplacian_numeric(&e1, &p("x^2", 1), 4.0, &[0.5]).unwrap();
    assert!((v - 6.0).abs() < 1e-12);
    assert!(p_laplacian_numeric(&e1, &p("x^2", 1), 2.0, &[0.5]).is_err());
}

#[test]
fn laplace_beltrami_on_sphere_matches_conformal_formula() {
    // on F⁻²δ in dimension m: Δu = F²Δ₀u − (m−2)F⟨∇₀F, ∇₀u⟩, and Δ₀u = 0 here
    let s = space("sphere:3");
    let u = p("x*y + z", 3);
    let lam = crate::spaces::lambda(3);
    let grad_dot = (0..3).fold(Expr::zero(3), |acc, i| &acc + &(&lam.partial(i).unwrap() * &u.partial(i).unwrap()));
    let want = -&(&lam * &grad_dot);
    assert!(laplace_beltrami(&s, &u).unwrap().equivalent(&Cleared::from(want)));
}

#[test]
fn map_tensions() {
    let e2 = space("euclid:2");
    let aff = comps(&["x + 2*y - 1", "3*x"], 2);
    assert!(all_zero(&tension_field(&e2, &e2, &aff).unwrap()));
    assert!(all_zero(&p_tension(&e2, &e2, &aff, 4).unwrap()));

    let e1 = space("euclid:1");
    let sq = comps(&["x^2"], 1);
    assert_eq!(expr(&tension_field(&e1, &e1, &sq).unwrap()[0]), Expr::from_i64(1, 2));
    assert_eq!(expr(&p_tension(&e1, &e1, &sq, 4).unwrap()[0]), p("24*x^2", 1));
    assert!(all_zero(&phm_residual(&e1, &e1, &sq, 4).unwrap()));

    // harmonic but not infinity-harmonic: τ₂ = 0, τ₄ = ½·2·T
    let u = comps(&["x^2 - y^2"], 2);
    let r2 = space("euclid:2");
    let r1 = space("euclid:1");
    assert!(all_zero(&tension_field(&r2, &r1, &u).unwrap()));
    let t4 = p_tension(&r2, &r1, &u, 4).unwrap();
    let (_, t) = infinity_tension_exact(&r2, &r1, &u).unwrap();
    assert!(t4[0].equivalent(&t[0]));
    assert_eq!(expr(&t[0]), p("16*x^2 - 16*y^2", 2));
}

#[test]
fn phm_identity_on_curved_spaces() {
    let cases: [(&str, &str, &[&str]); 4] = [
        ("nil", "euclid:2", &["x*y + z", "x - z^2"]),
        ("euclid:2", "sol", &["x*y", "y", "x + y^2"]),
        ("sphere:2", "sphere:2", &["x + y", "x - 2*y"]),
        ("euclid:2", "nil", &["x", "x*y", "y^2"]),
    ];
    for (d, c, srcs) in cases {
        let dom = space(d);
        let m = dom.dim();
        let cs = comps(srcs, m);
        let r = phm_residual(&dom, &space(c), &cs, 4).unwrap();
        assert!(all_zero(&r), "{d} -> {c}");
    }
}

#[test]
fn dimension_errors() {
    let e2 = space("euclid:2");
    assert!(matches!(energy_density_of(&e2, &e2, &comps(&["x"], 2)), Err(Error::Dimension(_))));
    assert!(matches!(metric_gradient(&e2, &p("x", 3)), Err(Error::Dimension(_))));
}
