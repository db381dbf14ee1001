//! Subcommand implementations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nhdegen::jordan::{jordan_matrix, DEFAULT_WEYR_TOL};
use nhdegen::json::{self, Provenance, RunReport};
use nhdegen::models::{self, lieb_base_point, ExactMatrix, LiebPath, ModelFamily, Realization};
use nhdegen::numeric::{EigenRoute, ZERO_FLOOR};
use nhdegen::tropical::plot;
use nhdegen::{
    braid_loop, catalog_families, charpoly_checked, fit_exponents, weyr_structure, BraidOptions, FitOptions,
    GaussianRational, JordanPartition, SampleGrid, SplittingReport,
};
use num_complex::Complex;
use serde_json::Value;

use crate::output::{emit, read_input, write_file, Failure, EXIT_CHECK, EXIT_PARSE, EXIT_UNDETERMINED};
use crate::{AnalyzeArgs, CatalogArgs, Cli, Command, ExampleArgs, FamilyRef, Format, JordanArgs, Route, VerifyArgs};

pub fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze(a) => analyze(cli, a),
        Command::Catalog(a) => catalog(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Example(a) => example(cli, a),
        Command::Jordan(a) => jordan(cli, a),
    }
}

fn out(cli: &Cli, contents: &str) -> Result<(), Failure> {
    emit(cli.global.output.as_deref(), contents)
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, String>, Failure> {
    raw.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Failure::new(EXIT_PARSE, format!("parameter {kv:?} is not key=value")))
        })
        .collect()
}

fn parse_partition(s: &str) -> Result<JordanPartition, Failure> {
    let sizes = s
        .split([',', '+'])
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::new(EXIT_PARSE, format!("partition {s:?} must be positive integers like 2,1")))?;
    Ok(JordanPartition::new(sizes)?)
}

fn parse_lambda(s: &str) -> Result<Complex<f64>, Failure> {
    let bad = || Failure::new(EXIT_PARSE, format!("eigenvalue {s:?} must be `re` or `re,im`"));
    let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = parts.next().transpose().map_err(|_| bad())?.unwrap_or(0.0);
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

fn report_line(r: &SplittingReport) -> String {
    let roots: Vec<String> = r.roots.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", roots.join(", "))
}

fn analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<u8, Failure> {
    let doc = json::parse_document(&read_input(&args.input)?)?;
    let input = json::exact_input_from_json(&doc)?;
    let cp = input.charpoly()?;
    let a = cp.analyze()?;
    if let Some(path) = &args.emit_tropical_plot {
        let hi = a.report.roots.iter().filter_map(|r| num_traits::ToPrimitive::to_f64(&r.omega)).fold(1.0, f64::max) * 2.0;
        write_file(path, &plot::samples_csv(&a.tropical, 0.0, hi, 201))?;
    }
    if let Some(path) = &args.svg {
        write_file(path, &plot::svg(&a.tropical, &a.polygon, &a.report))?;
    }
    let report = RunReport {
        splitting: a.report.clone(),
        polygon: args.emit_polygon.then(|| a.polygon.clone()),
        verification: None,
        braid: None,
        provenance: Provenance::current(None, BTreeMap::new()),
    };
    let text = match cli.global.format {
        Format::Json => json::to_pretty(&json::run_report_to_json(&report)),
        Format::Csv => plot::kinks_csv(&a.tropical),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "characteristic polynomial  {cp}");
            let _ = writeln!(s, "tropical polynomial        {}", a.tropical);
            let _ = writeln!(s, "roots (omega, mult)        {}", report_line(&a.report));
            let _ = writeln!(s, "zero roots                 {}", a.report.zero_root_count);
            if a.report.undetermined {
                let _ = writeln!(s, "undetermined               yes (truncated series too short)");
            }
            if args.emit_polygon {
                let hull: Vec<String> = a.polygon.hull().iter().map(|(i, al)| format!("({i},{al})")).collect();
                let _ = writeln!(s, "hull vertices              {}", hull.join(" "));
            }
            s
        }
    };
    out(cli, &text)?;
    Ok(if a.report.undetermined { EXIT_UNDETERMINED } else { 0 })
}

fn catalog(cli: &Cli, args: &CatalogArgs) -> Result<u8, Failure> {
    let sizes: Vec<usize> = match args.n {
        Some(n) => vec![n as usize],
        None => vec![2, 3, 4],
    };
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for n in sizes {
        for f in catalog_families(n, cli.global.seed)? {
            let computed = nhdegen::analyze(&charpoly_checked(&f.matrix)?)?.report;
            if computed != f.expected {
                mismatches += 1;
            }
            rows.push((f, computed));
        }
    }
    let text = match cli.global.format {
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|(f, computed)| {
                    let mut v = json::catalog_family_to_json(f);
                    v["computed"] = json::report_to_json(computed);
                    v
                })
                .collect();
            json::to_pretty(&Value::Array(arr))
        }
        Format::Csv => {
            let mut s = String::from("partition,constraint,generic,roots,zero_roots,matches\n");
            for (f, c) in &rows {
                let roots: Vec<String> = c.roots.iter().map(|r| format!("{}:{}", r.omega, r.multiplicity)).collect();
                let _ = writeln!(
                    s,
                    "\"{}\",\"{}\",{},{},{},{}",
                    f.partition,
                    f.constraint,
                    f.is_generic(),
                    roots.join(" "),
                    c.zero_root_count,
                    *c == f.expected
                );
            }
            s
        }
        Format::Table => {
            let mut s = format!("{:<14} {:<16} {:<28} {:>4}  {}\n", "form", "constraint", "roots (omega,mult)", "zero", "check");
            for (f, c) in &rows {
                let mark = if f.is_generic() { "*" } else { " " };
                let _ = writeln!(
                    s,
                    "{:<14} {:<16} {:<28} {:>4}  {}",
                    format!("{mark}{}", f.partition.label()),
                    f.constraint,
                    report_line(c),
                    c.zero_root_count,
                    if *c == f.expected { "ok" } else { "MISMATCH" }
                );
            }
            s.push_str("* generic perturbation\n");
            s
        }
    };
    out(cli, &text)?;
    if mismatches > 0 {
        return Err(Failure::new(EXIT_CHECK, format!("{mismatches} catalog rows disagree with their expectation")));
    }
    Ok(0)
}

fn resolve_family(cli: &Cli, r: &FamilyRef) -> Result<ModelFamily, Failure> {
    if let Some(name) = &r.example {
        return Ok(models::build(name, &parse_params(&r.params)?)?);
    }
    if !r.params.is_empty() {
        return Err(Failure::new(EXIT_PARSE, "--param needs --example"));
    }
    if let Some(p) = &r.jordan {
        let partition = parse_partition(p)?;
        let f = catalog_families(partition.n(), cli.global.seed)
            .map_err(|_| Failure::new(EXIT_PARSE, format!("no catalog for Jordan forms of size {}", partition.n())))?
            .into_iter()
            .find(|f| f.partition == partition && f.constraint == r.constraint)
            .ok_or_else(|| Failure::new(EXIT_PARSE, format!("no {} family with constraint {:?}", partition.label(), r.constraint)))?;
        let mut family = ModelFamily::from_exact(&f.name(), Realization::Matrix(ExactMatrix::Gaussian(f.matrix.clone())))?;
        family.expected = Some(f.expected.clone());
        return Ok(family);
    }
    if let Some(path) = &r.input {
        let doc = json::parse_document(&read_input(path)?)?;
        let realization = match json::exact_input_from_json(&doc)? {
            json::ExactInput::Matrix(m) => Realization::Matrix(m),
            json::ExactInput::CharPoly(c) => Realization::CharPoly(c),
        };
        return Ok(ModelFamily::from_exact(&path.display().to_string(), realization)?);
    }
    Err(Failure::new(EXIT_PARSE, "give one of --example, --jordan or --input"))
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<u8, Failure> {
    let family = resolve_family(cli, &args.family)?;
    let expected = family.expected.clone().ok_or_else(|| Failure::new(EXIT_PARSE, "family has no expected splitting"))?;
    // Exact realizations are re-analyzed so a short series cannot be checked
    // against an expectation it does not determine.
    let predicted = match family.charpoly()? {
        Some(cp) => Some(cp.analyze()?.report),
        None => None,
    };
    if expected.undetermined || predicted.as_ref().is_some_and(|p| p.undetermined) {
        return Err(Failure::new(EXIT_UNDETERMINED, format!("{}: expected splitting is undetermined", family.name)));
    }
    if let Some(p) = predicted.filter(|p| *p != expected) {
        return Err(Failure::new(
            EXIT_CHECK,
            format!("{}: tropical prediction {} differs from the expected {}", family.name, report_line(&p), report_line(&expected)),
        ));
    }
    let route = match args.route {
        Route::Auto => EigenRoute::Auto,
        Route::Dense => EigenRoute::Dense,
        Route::Charpoly => EigenRoute::CharPoly,
    };
    let grid = SampleGrid::new(args.t0, args.ratio, args.count, args.phase)?;
    let opts = FitOptions { route, tol: cli.global.tol.unwrap_or(FitOptions::default().tol), parallel: cli.global.parallel, ..FitOptions::default() };
    let spectral = family.spectral()?;
    let mut result = fit_exponents(spectral.as_ref(), &expected, &grid, &opts)?;
    let braid = if args.braid {
        let b = braid_loop(
            spectral.as_ref(),
            &BraidOptions { eps0: args.eps0, steps: args.steps, route, parallel: cli.global.parallel },
        )?;
        let want = expected.expected_cycle_lengths();
        if b.cycle_lengths != want {
            result.pass = false;
            result.diagnostics.push(format!("braid cycles {:?}, expected {:?}", b.cycle_lengths, want));
        }
        Some(b)
    } else {
        None
    };
    if let Some(path) = &args.tracks_csv {
        write_file(path, &result.tracks.to_csv())?;
    }
    let tolerances = BTreeMap::from([
        ("fit_tol".to_string(), opts.tol),
        ("cluster_gap".to_string(), opts.gap),
        ("zero_floor".to_string(), ZERO_FLOOR),
    ]);
    let pass = result.pass;
    let text = match cli.global.format {
        Format::Csv => result.tracks.to_csv(),
        Format::Json => {
            let report = RunReport {
                splitting: expected.clone(),
                polygon: None,
                verification: Some(result),
                braid,
                provenance: Provenance::current(Some(cli.global.seed), tolerances),
            };
            json::to_pretty(&json::run_report_to_json(&report))
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "family        {} {:?}", family.name, family.parameters);
            let _ = writeln!(s, "predicted     {} + {} zero", report_line(&expected), expected.zero_root_count);
            for c in &result.clusters {
                let m = c.matched.as_ref().map_or("none".to_string(), |r| r.to_string());
                let _ = writeln!(s, "cluster       exponent {:.4}  members {}  matched {}", c.exponent, c.members, m);
            }
            let _ = writeln!(s, "zero tracks   {} (expected {})", result.zero_tracks, result.expected_zero_tracks);
            if let Some(b) = &braid {
                let _ = writeln!(s, "braid cycles  {:?}  permutation {:?}", b.cycle_lengths, b.permutation);
            }
            for d in &result.diagnostics {
                let _ = writeln!(s, "note          {d}");
            }
            let _ = writeln!(s, "result        {}", if pass { "PASS" } else { "FAIL" });
            s
        }
    };
    out(cli, &text)?;
    Ok(if pass { 0 } else { EXIT_CHECK })
}

fn example(cli: &Cli, args: &ExampleArgs) -> Result<u8, Failure> {
    let Some(name) = &args.name else {
        let text = match cli.global.format {
            Format::Json => json::to_pretty(&Value::from(models::MODEL_NAMES.to_vec())),
            _ => models::MODEL_NAMES.iter().map(|n| format!("{n}\n")).collect(),
        };
        out(cli, &text)?;
        return Ok(0);
    };
    let family = models::build(name, &parse_params(&args.params)?)?;
    let text = match cli.global.format {
        Format::Json => {
            let v = match (&family.realization, args.charpoly) {
                (Realization::Matrix(m), false) => json::exact_matrix_to_json(m),
                (Realization::Matrix(m), true) => json::exact_charpoly_to_json(&m.charpoly()?),
                (Realization::CharPoly(c), _) => json::exact_charpoly_to_json(c),
                (Realization::Numeric(_), _) => {
                    return Err(Failure::new(
                        EXIT_PARSE,
                        format!("{name} is numeric only and has no exact JSON form; use `verify --example {name}`"),
                    ))
                }
            };
            json::to_pretty(&v)
        }
        Format::Csv => return Err(Failure::new(EXIT_PARSE, "example supports --format json or table")),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "name        {}", family.name);
            for (k, v) in &family.parameters {
                let _ = writeln!(s, "  {k:<13} {v}");
            }
            let _ = writeln!(s, "dimension   {}", family.dim());
            if let Some(c) = family.charpoly()? {
                let _ = writeln!(s, "charpoly    {c}");
            }
            if let Some(e) = &family.expected {
                let _ = writeln!(s, "expected    {} + {} zero", report_line(e), e.zero_root_count);
            }
            for n in &family.notes {
                let _ = writeln!(s, "note        {n}");
            }
            s
        }
    };
    out(cli, &text)?;
    Ok(0)
}

fn jordan(cli: &Cli, args: &JordanArgs) -> Result<u8, Failure> {
    let lambda = parse_lambda(&args.lambda)?;
    let matrix = if let Some(path) = &args.input {
        json::numeric_matrix_from_json(&json::parse_document(&read_input(path)?)?, "$")?
    } else if let Some(p) = &args.block {
        let p = parse_partition(p)?;
        let n = p.n();
        jordan_matrix(&p, &GaussianRational::from_ints(0, 0)).evaluate(Complex::new(0.0, 0.0))
            + nalgebra::DMatrix::identity(n, n) * lambda
    } else if let Some(path) = &args.lieb {
        let path: LiebPath = path.parse()?;
        lieb_base_point(path, args.eps)
    } else {
        return Err(Failure::new(EXIT_PARSE, "give a matrix file, --block or --lieb"));
    };
    let tol = cli.global.tol.unwrap_or(DEFAULT_WEYR_TOL);
    let s = weyr_structure(&matrix, lambda, tol)?;
    let text = match cli.global.format {
        Format::Json => json::to_pretty(&json::jordan_to_json(&s)),
        Format::Csv => {
            let mut out = String::from("k,rank\n");
            for (k, r) in s.rank_sequence.iter().enumerate() {
                let _ = writeln!(out, "{k},{r}");
            }
            out
        }
        Format::Table => format!(
            "eigenvalue     {}\npartition      {}\nrank sequence  {:?}\n",
            s.eigenvalue, s.partition, s.rank_sequence
        ),
    };
    out(cli, &text)?;
    Ok(0)
}
