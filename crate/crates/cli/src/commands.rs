//! One function per subcommand, each turning a loaded domain into a [`Report`].

use std::collections::BTreeMap;

use graphpde::generate::{random_dirichlet, random_function};
use graphpde::{
    green_identity_sides, identity_error, solve_ground_state, Complex64, Domain, GraphDocument,
    GraphFunction, GroundStateProblem, NlsProblem, NlsSolver, SpectralPropagator, Trajectory,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::report::{Cell, Report, Section};

/// Builds a Dirichlet function from a `vertex -> [re, im]` map. Vertices left
/// out are zero; zero entries for vertices that were dropped from the closure
/// are ignored.
pub fn function_from_map<'d>(
    domain: &'d Domain,
    doc: &GraphDocument,
    map: &BTreeMap<String, [f64; 2]>,
) -> Result<GraphFunction<'d>, CliError> {
    let mut f = GraphFunction::zeros(domain);
    for (name, &[re, im]) in map {
        if !(re.is_finite() && im.is_finite()) {
            return Err(CliError::Usage(format!(
                "non-finite initial value at vertex {name:?}"
            )));
        }
        let z = Complex64::new(re, im);
        match domain.index_of(name) {
            Ok(v) => f.values_mut()[v] = z,
            Err(_)
                if z == Complex64::new(0.0, 0.0)
                    && doc.edges.iter().flatten().any(|n| n == name) => {}
            Err(e) => return Err(e.into()),
        }
    }
    f.ensure_dirichlet()?;
    Ok(f)
}

fn required_initial<'d>(
    domain: &'d Domain,
    doc: &GraphDocument,
) -> Result<GraphFunction<'d>, CliError> {
    let map = doc
        .initial
        .as_ref()
        .ok_or_else(|| CliError::Usage("graph document has no `initial` data".into()))?;
    function_from_map(domain, doc, map)
}

fn domain_meta(report: &mut Report, domain: &Domain) {
    report.meta("vertices", Cell::Int(domain.len() as u64));
    report.meta("interior", Cell::Int(domain.n_interior() as u64));
    report.meta("boundary", Cell::Int(domain.n_boundary() as u64));
    report.meta("dropped", Cell::Int(domain.dropped_vertices() as u64));
}

pub fn spectrum(domain: &Domain) -> Result<Report, CliError> {
    let prop = SpectralPropagator::new(domain)?;
    let s = prop.spectrum();
    let mut report = Report::new("spectrum");
    domain_meta(&mut report, domain);
    report.meta("sweeps", Cell::Int(s.sweeps() as u64));
    report.meta(
        "eigenResidual",
        Cell::Sci(s.max_eigen_residual(prop.laplacian())),
    );
    report.meta("orthonormalityError", Cell::Sci(s.orthonormality_error()));

    let mut values = Section::new("eigenvalues", &["j", "lambda"]);
    for (j, &l) in s.eigenvalues().iter().enumerate() {
        values.push(vec![Cell::Int(j as u64), Cell::Num(l)]);
    }
    let names: Vec<String> = (0..s.len()).map(|j| format!("phi_{j}")).collect();
    let mut columns = vec!["vertex"];
    columns.extend(names.iter().map(String::as_str));
    let mut vectors = Section::new("eigenvectors", &columns);
    for x in domain.interior() {
        let mut row = vec![Cell::text(domain.name(x))];
        row.extend((0..s.len()).map(|j| Cell::Num(s.eigenvectors()[(x, j)])));
        vectors.push(row);
    }
    report.sections.extend([values, vectors]);
    Ok(report)
}

/// Rows, per-time summary and drift of the quantities in `conserved`.
fn trajectory_sections(domain: &Domain, traj: &Trajectory, conserved: &[&str]) -> Vec<Section> {
    let mut rows = Section::new("rows", &["t", "vertex", "re", "im"]);
    let mut summary = Section::new("summary", &["t", "mass", "dirichletEnergy", "waveEnergy"]);
    for ((&t, u), c) in traj.times.iter().zip(&traj.states).zip(&traj.conserved) {
        for v in 0..domain.len() {
            let z = u.at(v);
            rows.push(vec![
                Cell::Num(t),
                Cell::text(domain.name(v)),
                Cell::Num(z.re),
                Cell::Num(z.im),
            ]);
        }
        summary.push(vec![
            Cell::Num(t),
            Cell::Num(c.mass),
            Cell::Num(c.dirichlet_energy),
            c.wave_energy.map_or(Cell::Null, Cell::Num),
        ]);
    }
    let d = traj.drift();
    let mut drift = Section::new("drift", &["quantity", "maxRelativeDrift"]);
    for &q in conserved {
        let value = match q {
            "mass" => d.mass,
            "dirichletEnergy" => d.dirichlet_energy,
            "waveEnergy" => d.wave_energy.unwrap_or(f64::NAN),
            _ => unreachable!("unknown conserved quantity {q}"),
        };
        drift.push(vec![Cell::text(q), Cell::Sci(value)]);
    }
    vec![rows, summary, drift]
}

pub fn schrodinger(
    domain: &Domain,
    doc: &GraphDocument,
    times: &[f64],
) -> Result<Report, CliError> {
    let f = required_initial(domain, doc)?;
    let prop = SpectralPropagator::new(domain)?;
    let traj = prop.schrodinger(&f)?.trajectory(times);
    let mut report = Report::new("schrodinger");
    domain_meta(&mut report, domain);
    report.meta("samples", Cell::Int(times.len() as u64));
    report.sections = trajectory_sections(domain, &traj, &["mass", "dirichletEnergy"]);
    Ok(report)
}

pub fn wave(domain: &Domain, doc: &GraphDocument, times: &[f64]) -> Result<Report, CliError> {
    let f = required_initial(domain, doc)?;
    let g = match &doc.initial_velocity {
        Some(map) => function_from_map(domain, doc, map)?,
        None => GraphFunction::zeros(domain),
    };
    let prop = SpectralPropagator::new(domain)?;
    let traj = prop.wave(&f, &g)?.trajectory(times);
    let mut report = Report::new("wave");
    domain_meta(&mut report, domain);
    report.meta("samples", Cell::Int(times.len() as u64));
    report.sections = trajectory_sections(domain, &traj, &["waveEnergy"]);
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
pub fn nls(
    domain: &Domain,
    doc: &GraphDocument,
    times: &[f64],
    p: f64,
    horizon: f64,
    substep: f64,
    tol: f64,
    max_picard_iters: usize,
) -> Result<Report, CliError> {
    let f = required_initial(domain, doc)?;
    let prob = NlsProblem::new(domain, p, f, horizon)?
        .with_substep(substep)?
        .with_picard(tol, max_picard_iters)?;
    let out = NlsSolver::new(&prob)?.solve(times)?;
    let mut report = Report::new("nls");
    domain_meta(&mut report, domain);
    report.meta("samples", Cell::Int(times.len() as u64));
    report.meta("p", Cell::Num(p));
    report.meta("horizon", Cell::Num(horizon));
    report.meta("substep", Cell::Num(prob.substep));
    report.meta("substeps", Cell::Int(out.substeps as u64));
    report.meta(
        "maxPicardIterations",
        Cell::Int(out.max_picard_iterations as u64),
    );
    report.meta("maxContractionRatio", Cell::Sci(out.max_contraction_ratio));
    report.sections = trajectory_sections(domain, &out.trajectory, &["mass"]);
    Ok(report)
}

pub fn ground_state(
    domain: &Domain,
    doc: &GraphDocument,
    p: f64,
    tol: f64,
    seed: u64,
    max_iters: usize,
) -> Result<Report, CliError> {
    let mut potential = vec![0.0; domain.n_interior()];
    for (name, &v) in doc.potential.iter().flatten() {
        let x = domain.index_of(name)?;
        if !domain.is_interior(x) {
            return Err(graphpde::Error::BoundaryVertex(name.clone()).into());
        }
        potential[x] = v;
    }
    let prob = GroundStateProblem::new(domain, p)?
        .with_potential(potential)?
        .with_tol(tol)?
        .with_seed(seed)
        .with_max_iters(max_iters);
    let gs = solve_ground_state(&prob)?;
    let mut report = Report::new("ground-state");
    domain_meta(&mut report, domain);
    report.meta("p", Cell::Num(p));
    report.meta("seed", Cell::Int(seed));
    report.meta("iterations", Cell::Int(gs.iterations as u64));
    report.meta("J", Cell::Num(gs.values.action));
    report.meta("constraintGap", Cell::Sci(gs.values.constraint_gap));
    report.meta("elResidual", Cell::Sci(gs.values.el_residual));

    let mut state = Section::new("state", &["vertex", "u"]);
    for x in domain.interior() {
        state.push(vec![
            Cell::text(domain.name(x)),
            Cell::Num(gs.state.at(x).re),
        ]);
    }
    let mut probes = Section::new("probes", &["probe", "J"]);
    for (label, j) in &gs.probes {
        probes.push(vec![Cell::text(label.as_str()), Cell::Num(*j)]);
    }
    report.sections.extend([state, probes]);
    Ok(report)
}

struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
    /// `value > threshold` instead of `value <= threshold`
    strict_lower: bool,
}

impl Check {
    fn passed(&self) -> bool {
        if self.strict_lower {
            self.value > self.threshold
        } else {
            self.value <= self.threshold
        }
    }
}

/// Runs every invariant on seeded random data; the second value is true when
/// all thresholds hold.
pub fn verify(
    domain: &Domain,
    seed: u64,
    trials: usize,
    threshold_scale: f64,
) -> Result<(Report, bool), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prop = SpectralPropagator::new(domain)?;
    let s = prop.spectrum();
    let l = prop.laplacian();
    let lambda_scale = s.lambda_max().max(1.0);

    let mut green: f64 = 0.0;
    for _ in 0..trials {
        let f = random_function(&mut rng, domain);
        let g = random_function(&mut rng, domain);
        let (lhs, rhs) = green_identity_sides(&f, &g)?;
        green = green.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
    }

    let identity = identity_error(&s.schrodinger_kernel(0.0));
    let mut unitarity: f64 = 0.0;
    for _ in 0..trials {
        unitarity = unitarity.max(s.unitarity_error(rng.random_range(0.0..10.0)));
    }

    let times: Vec<f64> = (0..50).map(|k| 10.0 * k as f64 / 49.0).collect();
    let (mut mass, mut energy, mut pde, mut wave_energy, mut wave_init) =
        (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..trials {
        let f = random_dirichlet(&mut rng, domain);
        let sol = prop.schrodinger(&f)?;
        let d = sol.trajectory(&times).drift();
        mass = mass.max(d.mass);
        energy = energy.max(d.dirichlet_energy);
        for &t in &times {
            let u = sol.state(t);
            let ut = sol.time_derivative(t);
            let lu = l.apply(u.interior());
            // i u_t + Δu = i u_t − L u on the interior
            let r: f64 = ut
                .interior()
                .iter()
                .zip(&lu)
                .map(|(a, b)| (Complex64::i() * a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            pde = pde.max(r);
        }

        let g = random_dirichlet(&mut rng, domain);
        let w = prop.wave(&f, &g)?;
        wave_energy = wave_energy.max(
            w.trajectory(&times)
                .drift()
                .wave_energy
                .unwrap_or(f64::INFINITY),
        );
        wave_init = wave_init.max(
            w.state(0.0)
                .max_abs_diff(&f)
                .max(w.velocity(0.0).max_abs_diff(&g)),
        );
    }

    let scaled = |t: f64| t * threshold_scale;
    let checks = [
        Check {
            name: "greenIdentity",
            value: green,
            threshold: scaled(1e-12),
            strict_lower: false,
        },
        Check {
            name: "eigenResidual",
            value: s.max_eigen_residual(l) / lambda_scale,
            threshold: scaled(1e-10),
            strict_lower: false,
        },
        Check {
            name: "orthonormality",
            value: s.orthonormality_error(),
            threshold: scaled(1e-10),
            strict_lower: false,
        },
        Check {
            name: "minEigenvalue",
            value: s.eigenvalues().first().copied().unwrap_or(f64::NAN),
            threshold: 0.0,
            strict_lower: true,
        },
        Check {
            name: "kernelAtZero",
            value: identity,
            threshold: 0.0,
            strict_lower: false,
        },
        Check {
            name: "unitarity",
            value: unitarity,
            threshold: scaled(1e-10),
            strict_lower: false,
        },
        Check {
            name: "massDrift",
            value: mass,
            threshold: scaled(1e-10),
            strict_lower: false,
        },
        Check {
            name: "dirichletEnergyDrift",
            value: energy,
            threshold: scaled(1e-10),
            strict_lower: false,
        },
        Check {
            name: "schrodingerResidual",
            value: pde,
            threshold: scaled(1e-10),
            strict_lower: false,
        },
        Check {
            name: "waveEnergyDrift",
            value: wave_energy,
            threshold: scaled(1e-10),
            strict_lower: false,
        },
        Check {
            name: "waveInitialData",
            value: wave_init,
            threshold: scaled(1e-12),
            strict_lower: false,
        },
    ];

    let all = checks.iter().all(Check::passed);
    let mut report = Report::new("verify");
    domain_meta(&mut report, domain);
    report.meta("seed", Cell::Int(seed));
    report.meta("trials", Cell::Int(trials as u64));
    report.meta("passed", Cell::Bool(all));
    let mut section = Section::new(
        "checks",
        &["check", "value", "relation", "threshold", "status"],
    );
    for c in &checks {
        section.push(vec![
            Cell::text(c.name),
            Cell::Sci(c.value),
            Cell::text(if c.strict_lower { ">" } else { "<=" }),
            Cell::Sci(c.threshold),
            Cell::text(if c.passed() { "PASS" } else { "FAIL" }),
        ]);
    }
    report.sections.push(section);
    Ok((report, all))
}
