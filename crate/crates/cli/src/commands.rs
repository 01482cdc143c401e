//! The subcommands, each turning an input into a [`Report`].

use blade_angles::algebra::blade_label;
use blade_angles::angles::AngleReport;
use blade_angles::bivector::{plucker_coordinates, plucker_decomposition, YVector};
use blade_angles::hitzer::hitzer_recover;
use blade_angles::prelude::*;
use blade_angles::verify::{run_suite, SuiteConfig};
use blade_angles::Error;

use crate::input::InputDocument;
use crate::report::{angles, reals, texts, Node, Obj, Report};
use crate::CliError;

/// Nonzero coefficients keyed by basis blade; coefficients below
/// `eps_structural` times the largest one are dropped as round-off.
fn coefficients(m: &Multivector64, tol: &Tolerance64) -> Node {
    let cut = tol.structural * m.max_abs();
    Node::Map(m.terms().filter(|(_, c)| c.abs() > cut).map(|(mask, c)| (blade_label(mask), Node::Real(c))).collect())
}

fn principal_section(pd: &PrincipalData64) -> Node {
    Obj::new()
        .int("p", pd.p())
        .int("q", pd.q())
        .node("thetas", angles(pd.thetas()))
        .int("d", pd.zero_count())
        .int("D", pd.last_non_right())
        .int("epsilon", pd.eps_ab().as_i8())
        .real("norm-a", pd.norm_a())
        .real("norm-b", pd.norm_b())
        .build()
}

fn warnings(pd: &PrincipalData64) -> Vec<String> {
    let mut out = Vec::new();
    let m = pd.m();
    if m > 0 && pd.is_right_angle(m - 1) {
        out.push("last principal angle is right: the angle bivector is not unique".to_string());
    }
    if !pd.orientation().determinate {
        out.push("reverse(A) * B vanishes: the relative orientation depends on the basis choice".to_string());
    }
    if pd.p() > pd.q() {
        out.push("first blade has the larger grade: only its projective part enters".to_string());
    }
    out
}

struct Loaded {
    doc: InputDocument,
    tol: Tolerance64,
    a: Blade64,
    b: Blade64,
    pd: PrincipalData64,
}

fn load(doc: InputDocument, eps: Option<f64>) -> Result<Loaded, CliError> {
    let tol = doc.tolerance(Tolerance64::from_env()?, eps)?;
    let (a, b) = doc.blades(&tol)?;
    let pd = PrincipalData64::compute(&a, &b, &tol)?;
    Ok(Loaded { doc, tol, a, b, pd })
}

pub fn angles_cmd(doc: InputDocument, eps: Option<f64>) -> Result<Report, CliError> {
    let l = load(doc, eps)?;
    let r = AngleReport::from_principal(&l.pd, true);
    let mut section = Obj::new()
        .angle("asym-vw", r.asym_vw)
        .angle("asym-wv", r.asym_wv)
        .angle("comp", r.comp)
        .angle("max-sym", r.max_sym)
        .angle("min-sym", r.min_sym)
        .real("proj-factor-vw", r.proj_factor_vw);
    if let Some(o) = r.oriented {
        section = section.node(
            "oriented",
            Obj::new()
                .angle("asym", o.asym)
                .angle("comp", o.comp)
                .angle("max-sym", o.max_sym)
                .real("proj-factor", o.proj_factor)
                .int("sign", o.sign.as_i8())
                .bool("determinate", o.determinate)
                .build(),
        );
    }
    Ok(Report::new(Some(l.doc))
        .section("principal", principal_section(&l.pd))
        .section("angles", section.build())
        .section("warnings", texts(&warnings(&l.pd))))
}

pub fn product_cmd(doc: InputDocument, eps: Option<f64>) -> Result<Report, CliError> {
    let l = load(doc, eps)?;
    let (am, bm) = (l.a.multivector(), l.b.multivector());
    let product = &am.reverse() * bm;
    let products = Obj::new()
        .node("reverse-a-times-b", coefficients(&product, &l.tol))
        .node("left-contraction", coefficients(&am.left_contraction(bm)?, &l.tol))
        .node("outer", coefficients(&am.outer_product(bm)?, &l.tol))
        .node("anticommutator", coefficients(&am.anticommutator(bm)?, &l.tol))
        .node("commutator", coefficients(&am.commutator(bm)?, &l.tol))
        .real("norm-of-product", product.norm())
        .build();

    // Coordinates of A/|A|: the library's are those of e_1...e_m.
    let sign = l.pd.eps_a().value::<f64>();
    let coords = plucker_coordinates(&l.pd)?;
    let sum: f64 = coords.iter().map(|c| c.value * c.value).sum();
    let list =
        coords.iter().map(|c| Obj::new().text("blade", c.label()).real("value", sign * c.value).build()).collect();
    let plucker = Obj::new().node("coordinates", Node::List(list)).real("sum-of-squares", sum).build();

    Ok(Report::new(Some(l.doc))
        .section("principal", principal_section(&l.pd))
        .section("products", products)
        .section("plucker", plucker)
        .section("warnings", texts(&warnings(&l.pd))))
}

fn bivector_node(phi: &AngleBivector64, tol: &Tolerance64) -> Node {
    let terms = phi
        .terms()
        .iter()
        .map(|t| {
            Obj::new()
                .int("index", t.index + 1)
                .angle("theta", t.theta)
                .node("plane", coefficients(&t.plane, tol))
                .build()
        })
        .collect();
    Obj::new()
        .node("terms", Node::List(terms))
        .node("coefficients", coefficients(&phi.as_multivector(), tol))
        .real("norm", phi.norm())
        .bool("unique", phi.is_unique())
        .build()
}

/// `e^Φ` and its split over products of principal planes, each labelled by
/// the coordinate blade it carries `F` to.
fn exponential_node(phi: &AngleBivector64, tol: &Tolerance64) -> Node {
    let m = phi.principal().m();
    let terms = plucker_decomposition(phi)
        .into_iter()
        .map(|t| {
            let blade: Vec<String> = (0..m)
                .map(|i| if t.indices.contains(&i) { YVector::EPerp(i) } else { YVector::F(i) }.to_string())
                .collect();
            let planes: Vec<i64> = t.indices.iter().map(|i| *i as i64 + 1).collect();
            Obj::new()
                .node("planes", Node::List(planes.into_iter().map(Node::Int).collect()))
                .text("coordinate-blade", blade.join(" "))
                .real("coefficient", t.coefficient)
                .build()
        })
        .collect();
    Obj::new().node("coefficients", coefficients(&phi.exp(), tol)).node("plucker-terms", Node::List(terms)).build()
}

pub fn bivector_cmd(doc: InputDocument, eps: Option<f64>) -> Result<Report, CliError> {
    let l = load(doc, eps)?;
    let phi = AngleBivector64::from_principal(l.pd.clone(), false)?;
    let mut report = Report::new(Some(l.doc.clone()))
        .section("principal", principal_section(&l.pd))
        .section("bivector", bivector_node(&phi, &l.tol))
        .section("exp-phi", exponential_node(&phi, &l.tol));
    let mut notes = warnings(&l.pd);
    match AngleBivector64::from_principal(l.pd.clone(), true) {
        Ok(oriented) => {
            report = report
                .section("oriented-bivector", bivector_node(&oriented, &l.tol))
                .section("oriented-exp-phi", exponential_node(&oriented, &l.tol));
        }
        Err(Error::NoRotationPlane) => {
            notes.push("opposite orientations and no room to rotate: the oriented bivector does not exist".to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report.section("warnings", texts(&notes)))
}

pub fn geodesic_cmd(doc: InputDocument, eps: Option<f64>, steps: usize) -> Result<Report, CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    let l = load(doc, eps)?;
    if l.pd.p() > l.pd.q() {
        return Err(CliError::Usage("geodesic needs the first blade to have grade at most that of the second".into()));
    }
    let mut notes = warnings(&l.pd);
    let phi = match AngleBivector64::from_principal(l.pd.clone(), true) {
        Ok(phi) => phi,
        Err(Error::NoRotationPlane) => {
            notes.push("no oriented bivector: following the unoriented geodesic, which ends at -B/|B|".to_string());
            AngleBivector64::from_principal(l.pd.clone(), false)?
        }
        Err(e) => return Err(e.into()),
    };
    let start = l.a.normalized()?;
    let mut points = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = k as f64 / (steps - 1) as f64;
        let f = geodesic_sample(&phi, &start, t)?;
        let frame = Node::List(f.factors().iter().map(|v| reals(v)).collect());
        let to_a = principal_angles(&start.subspace(), &f.subspace())?;
        points.push(
            Obj::new()
                .real("t", t)
                .node("frame", frame)
                .real("scale", f.scale())
                .node("angles-to-a", angles(&to_a))
                .build(),
        );
    }
    Ok(Report::new(Some(l.doc))
        .section("principal", principal_section(&l.pd))
        .section(
            "geodesic",
            Obj::new().int("steps", steps).real("length", phi.norm()).node("points", Node::List(points)).build(),
        )
        .section("warnings", texts(&notes)))
}

pub fn hitzer_cmd(doc: InputDocument, eps: Option<f64>) -> Result<Report, CliError> {
    let l = load(doc, eps)?;
    let mut notes = Vec::new();
    let (small, large, pd) = if l.a.grade() <= l.b.grade() {
        (l.a.clone(), l.b.clone(), l.pd.clone())
    } else {
        notes.push("first blade has the larger grade: recovering from reverse(B) A".to_string());
        (l.b.clone(), l.a.clone(), l.pd.swapped())
    };
    let ua = small.normalized()?;
    let mut ub = large.normalized()?;
    let s = ua.multivector().reverse().scalar_product(ub.multivector())?;
    let determinate = s.abs() > l.tol.structural;
    if s < 0.0 && determinate {
        notes.push("reverse(A) * B is negative: the larger blade is negated first".to_string());
        ub = ub.scaled(-1.0);
    }
    if !determinate {
        notes.push("reverse(A) * B vanishes: only the angles are reported".to_string());
    }
    let product = &ua.multivector().reverse() * ub.multivector();
    let rec = hitzer_recover(&product, ua.grade(), ub.grade(), &l.tol)?;
    let deviation = rec.thetas.iter().zip(pd.thetas()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let mut section = Obj::new()
        .int("d", rec.d)
        .int("D", rec.big_d)
        .node("thetas", angles(&rec.thetas))
        .node("svd-thetas", angles(pd.thetas()))
        .real("max-deviation", deviation);
    if determinate {
        let planes = rec
            .generic_thetas
            .iter()
            .zip(&rec.planes)
            .map(|(t, i)| Obj::new().angle("theta", *t).node("plane", coefficients(i, &l.tol)).build())
            .collect();
        section = section
            .node("planes", Node::List(planes))
            .node("tangent-bivector", coefficients(&rec.tangent_bivector, &l.tol));
    }
    Ok(Report::new(Some(l.doc)).section("recovery", section.build()).section("warnings", texts(&notes)))
}

pub struct VerifyArgs {
    pub seed: u64,
    pub trials: usize,
    pub nmax: usize,
    pub eps: Option<f64>,
    pub inject_fault: bool,
}

/// Returns the report and whether every identity passed.
pub fn verify_cmd(args: &VerifyArgs) -> Result<(Report, bool), CliError> {
    let min_dim = 3;
    if !(min_dim..=blade_angles::algebra::MAX_DIM).contains(&args.nmax) {
        return Err(CliError::Usage(format!("--nmax must be in {min_dim}..={}", blade_angles::algebra::MAX_DIM)));
    }
    let mut tol = Tolerance64::from_env()?;
    if let Some(x) = args.eps {
        tol = tol.with_identity(x)?;
    }
    let mut config = SuiteConfig::new(args.seed, args.trials, args.nmax, tol);
    config.inject_fault = args.inject_fault;
    let report = run_suite(&config);

    let identities = report
        .identities
        .iter()
        .map(|s| {
            Obj::new()
                .text("name", s.name)
                .int("total", s.total)
                .int("passed", s.passed)
                .int("skipped", s.skipped)
                .real("max-residual", s.max_relative_residual)
                .build()
        })
        .collect();
    let failures = report
        .identities
        .iter()
        .filter_map(|s| s.first_failure.as_ref().map(|f| (s, f)))
        .map(|(s, f)| {
            let mut o = Obj::new()
                .text("name", s.name)
                .int("failed", s.failed())
                .text("digest", &f.digest)
                .real("residual", f.residual);
            if let Some(why) = &f.skip_reason {
                o = o.text("reason", why);
            }
            o.build()
        })
        .collect();
    let all = report.all_passed();
    let summary = Obj::new()
        .int("seed", args.seed)
        .int("trials", args.trials)
        .int("nmax", args.nmax)
        .real("eps", tol.identity)
        .bool("all-passed", all)
        .build();
    let out = Report::new(None)
        .section("summary", summary)
        .section("identities", Node::List(identities))
        .section("failures", Node::List(failures));
    Ok((out, all))
}
