use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::net::SocketAddr;
use std::path::Path;

use serde::Serialize;

use planeform::conic::ConicError;
use planeform::diffset::{DiffSetError, Verification};
use planeform::form::{
    builtin_forms, find_builtin_form, BaseLines, FormError, FormPattern, Strategy,
    DEFAULT_THRESHOLD,
};
use planeform::octonion::{Basis, OctonionTable};
use planeform::plane::{AxiomReport, PlaneDocument, Witness};
use planeform::{
    algebra_report, build_field_plane, build_table, check_axioms, develop, discover_structure,
    enumerate_conics, enumerate_ovals, form_from_difference_set, paper_orientation, parse_poem,
    regularity_stats, scaffold, search_difference_sets, segre_check, singer_shift_check, to_json,
    validate, verify_difference_set, DifferenceSet, IncidenceStructure, MatchMode,
};
use planeform_service::{AppState, FormSummary, ScaffoldResponse};

use crate::{
    Cli, Command, DiffsetCmd, FormCmd, FormSelector, Format, OctonionCmd, OvalCmd, PlaneCmd,
    ServeArgs,
};

/// Overrides the default fuzzy threshold when `--threshold` is absent.
pub const THRESHOLD_ENV: &str = "PLANEFORM_THRESHOLD";

/// Rendered stdout and whether the verdict was positive.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }

    fn verdict(text: String, ok: bool) -> Self {
        Output { text, ok }
    }
}

type Result<T> = std::result::Result<T, String>;

pub fn run(cli: Cli) -> Result<Output> {
    let f = cli.format;
    match cli.command {
        Command::Plane(cmd) => plane(cmd, f),
        Command::Diffset(cmd) => diffset(cmd, f),
        Command::Oval(cmd) => oval(cmd, f),
        Command::Octonion(cmd) => octonion(cmd, f),
        Command::Form(cmd) => form(cmd, f),
        Command::Serve(args) => serve(args),
    }
}

fn render<T: Serialize>(f: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match f {
        Format::Json => to_json(value),
        Format::Text => text(value),
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))
}

fn read_structure(path: &Path) -> Result<IncidenceStructure> {
    let doc: PlaneDocument = serde_json::from_str(&read_text(path)?)
        .map_err(|e| format!("{}: not a plane document: {e}", path.display()))?;
    IncidenceStructure::from_document(doc).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_residues(n: usize, set: &str) -> Result<DifferenceSet> {
    let residues = set
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad residue {s:?} in {set:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    DifferenceSet::new(n, residues).map_err(|e| e.to_string())
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

// ---- plane ----

fn plane(cmd: PlaneCmd, f: Format) -> Result<Output> {
    match cmd {
        PlaneCmd::Build { q, output } => {
            let s = build_field_plane(q).map_err(|e| e.to_string())?;
            let doc = s.to_document();
            if let Some(path) = output {
                write_text(&path, &to_json(&doc))?;
            }
            Ok(Output::ok(render(f, &doc, plane_text)))
        }
        PlaneCmd::Check { file } => {
            let s = read_structure(&file)?;
            let report = check_axioms(&s);
            let ok = report.all_ok();
            Ok(Output::verdict(render(f, &report, axiom_text), ok))
        }
        PlaneCmd::Stats { file } => {
            let s = read_structure(&file)?;
            let stats = regularity_stats(&s);
            Ok(Output::ok(render(f, &stats, |st| {
                let order = st.order.map_or("undefined".to_string(), |n| n.to_string());
                format!(
                    "points: {}\nlines: {}\npoints per line: {}\nlines per point: {}\norder: {order}\n",
                    st.points,
                    st.lines,
                    join(&st.points_per_line.iter().collect::<Vec<_>>(), ", "),
                    join(&st.lines_per_point.iter().collect::<Vec<_>>(), ", "),
                )
            })))
        }
    }
}

fn plane_text(doc: &PlaneDocument) -> String {
    let mut out = format!(
        "{}: {} points, {} lines\n",
        doc.origin,
        doc.point_count,
        doc.lines.len()
    );
    if let Some(labels) = &doc.point_labels {
        for (i, label) in labels.iter().enumerate() {
            let _ = writeln!(out, "  p{i} = {label}");
        }
    }
    for (i, line) in doc.lines.iter().enumerate() {
        let _ = writeln!(out, "  L{i}: {{{}}}", join(line, ", "));
    }
    out
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::PointPair {
            points,
            common_lines,
        } => format!(
            "points {} and {} share {} lines [{}]",
            points[0],
            points[1],
            common_lines.len(),
            join(common_lines, ", ")
        ),
        Witness::LinePair {
            lines,
            common_points,
        } => format!(
            "lines {} and {} share {} points [{}]",
            lines[0],
            lines[1],
            common_points.len(),
            join(common_points, ", ")
        ),
        Witness::NoQuadrilateral { point_count } => {
            format!("no four of the {point_count} points are in general position")
        }
    }
}

fn axiom_text(r: &AxiomReport) -> String {
    let rows = [
        (
            "axiom 1 (two points, one line)",
            r.axiom1_ok,
            &r.witnesses.axiom1,
        ),
        (
            "axiom 2 (two lines, one point)",
            r.axiom2_ok,
            &r.witnesses.axiom2,
        ),
        (
            "axiom 3 (four points, no three collinear)",
            r.axiom3_ok,
            &r.witnesses.axiom3,
        ),
    ];
    let mut out = String::new();
    for (name, ok, witness) in rows {
        let _ = write!(out, "{name}: {}", if ok { "ok" } else { "FAIL" });
        if let Some(w) = witness {
            let _ = write!(out, " ({})", witness_text(w));
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "projective plane: {}",
        if r.all_ok() { "yes" } else { "no" }
    );
    out
}

// ---- diffset ----

fn diffset(cmd: DiffsetCmd, f: Format) -> Result<Output> {
    match cmd {
        DiffsetCmd::Verify { n, set } => {
            let d = parse_residues(n, &set)?;
            let v = verify_difference_set(&d);
            let ok = v.ok;
            Ok(Output::verdict(render(f, &v, verification_text), ok))
        }
        DiffsetCmd::Search { n, k } => {
            let hits = search_difference_sets(n, k).map_err(|e| e.to_string())?;
            let found = !hits.is_empty();
            let text = render(f, &hits, |hits| {
                let mut out = format!("{} perfect {k}-sets mod {n}\n", hits.len());
                for h in hits {
                    let tag = if h.orbit_representative {
                        "  (orbit representative)"
                    } else {
                        ""
                    };
                    let _ = writeln!(out, "{}{tag}", join(h.set.residues(), ","));
                }
                out
            });
            Ok(Output::verdict(text, found))
        }
        DiffsetCmd::Develop { n, set, output } => {
            let d = parse_residues(n, &set)?;
            match develop(&d) {
                Ok(s) => {
                    let doc = s.to_document();
                    if let Some(path) = output {
                        write_text(&path, &to_json(&doc))?;
                    }
                    Ok(Output::ok(render(f, &doc, plane_text)))
                }
                Err(DiffSetError::NotPerfect { .. }) => {
                    let v = verify_difference_set(&d);
                    Ok(Output::verdict(render(f, &v, verification_text), false))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        DiffsetCmd::Shift { file } => {
            let s = read_structure(&file)?;
            let ok = singer_shift_check(&s).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct ShiftReport {
                shift_is_collineation: bool,
            }
            let report = ShiftReport {
                shift_is_collineation: ok,
            };
            let text = render(f, &report, |r| {
                format!(
                    "i -> i+1 preserves lines: {}\n",
                    if r.shift_is_collineation { "yes" } else { "no" }
                )
            });
            Ok(Output::verdict(text, ok))
        }
    }
}

fn verification_text(v: &Verification) -> String {
    let mut out = format!("{{{}}} mod {}\n", join(&v.residues, ","), v.n);
    for row in &v.table {
        let _ = writeln!(out, "  {} - {} = {}", row.a, row.b, row.diff);
    }
    if v.ok {
        let _ = writeln!(
            out,
            "every nonzero residue 1..{} occurs exactly once",
            v.n - 1
        );
    } else {
        if !v.missing.is_empty() {
            let _ = writeln!(out, "missing: {}", join(&v.missing, ", "));
        }
        for r in &v.repeated {
            let _ = writeln!(out, "repeated: {} ({} times)", r.value, r.count);
        }
    }
    let _ = writeln!(out, "perfect: {}", if v.ok { "yes" } else { "no" });
    out
}

// ---- oval ----

fn conic_error(e: ConicError) -> String {
    e.to_string()
}

fn oval(cmd: OvalCmd, f: Format) -> Result<Output> {
    match cmd {
        OvalCmd::Segre { q, allow_long } => {
            let report = segre_check(q, allow_long).map_err(conic_error)?;
            let ok = report.equal;
            let text = render(f, &report, |r| {
                format!(
                    "q = {}\novals: {}\nconics: {}\nequal: {}\n",
                    r.q, r.oval_count, r.conic_count, r.equal
                )
            });
            Ok(Output::verdict(text, ok))
        }
        OvalCmd::List { q, conics } => {
            let sets = if conics {
                enumerate_conics(q).map_err(conic_error)?
            } else {
                let plane = build_field_plane(q).map_err(|e| e.to_string())?;
                enumerate_ovals(&plane).map_err(conic_error)?
            };
            let kind = if conics { "conics" } else { "ovals" };
            let text = render(f, &sets, |sets| {
                let mut out = format!("{} {kind} in PG(2,{q})\n", sets.len());
                for s in sets {
                    let _ = writeln!(out, "{{{}}}", join(s, ", "));
                }
                out
            });
            Ok(Output::ok(text))
        }
    }
}

// ---- octonion ----

fn table() -> OctonionTable {
    build_table(&paper_orientation()).expect("listed orientation is valid")
}

fn octonion(cmd: OctonionCmd, f: Format) -> Result<Output> {
    let t = table();
    match cmd {
        OctonionCmd::Table => {
            let doc = t.to_document();
            Ok(Output::ok(render(f, &doc, |_| t.render_text())))
        }
        OctonionCmd::Mul { a, b } => {
            let x: Basis = a
                .parse()
                .map_err(|e: planeform::octonion::OctonionError| e.to_string())?;
            let y: Basis = b
                .parse()
                .map_err(|e: planeform::octonion::OctonionError| e.to_string())?;
            #[derive(Serialize)]
            struct Product {
                left: String,
                right: String,
                product: String,
            }
            let p = Product {
                left: x.to_string(),
                right: y.to_string(),
                product: t.basis_product(x, y).to_string(),
            };
            Ok(Output::ok(render(f, &p, |p| format!("{}\n", p.product))))
        }
        OctonionCmd::Report { samples, seed } => {
            let r = algebra_report(&t, samples, seed);
            let text = render(f, &r, |r| {
                let w = &r.witnesses;
                let line = |name: &str, value: bool, witness: &Option<Vec<String>>| {
                    let mut s = format!("{name}: {value}");
                    if let Some(w) = witness {
                        let _ = write!(s, " (witness: {})", w.join(", "));
                    }
                    s.push('\n');
                    s
                };
                let mut out = String::new();
                out += &line("alternative", r.alternative, &w.alternative);
                out += &line("associative", r.associative, &w.associative);
                out += &line("commutative", r.commutative, &w.commutative);
                out += &line(
                    "norm multiplicative",
                    r.norm_multiplicative,
                    &w.norm_multiplicative,
                );
                let _ = writeln!(
                    out,
                    "basis identities checked: {}\nrandom samples: {} (seed {})",
                    r.basis_identities_checked, r.samples, r.seed
                );
                out
            });
            Ok(Output::ok(text))
        }
    }
}

// ---- form ----

fn form_error(e: FormError) -> String {
    e.to_string()
}

fn select_form(sel: &FormSelector) -> Result<FormPattern> {
    match (&sel.form, &sel.form_file) {
        (Some(name), _) => find_builtin_form(name).ok_or_else(|| {
            let names: Vec<String> = builtin_forms()
                .iter()
                .map(|f| f.name().to_string())
                .collect();
            format!(
                "unknown form {name:?}; built-in forms: {}",
                names.join(", ")
            )
        }),
        (None, Some(path)) => serde_json::from_str(&read_text(path)?)
            .map_err(|e| format!("{}: not a valid form document: {e}", path.display())),
        (None, None) => Err("one of --form or --form-file is required".into()),
    }
}

/// `--threshold`, else the environment override (echoed on stderr), else
/// the default.
fn effective_threshold(flag: Option<f64>) -> Result<Option<f64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THRESHOLD_ENV) {
        Ok(raw) => {
            let t: f64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("{THRESHOLD_ENV}={raw:?} is not a number"))?;
            eprintln!("using threshold {t} from {THRESHOLD_ENV}");
            Ok(Some(t))
        }
        Err(_) => Ok(None),
    }
}

fn form(cmd: FormCmd, f: Format) -> Result<Output> {
    match cmd {
        FormCmd::List => {
            let forms: Vec<FormSummary> = builtin_forms().iter().map(FormSummary::from).collect();
            Ok(Output::ok(render(f, &forms, |forms| {
                let mut out = String::new();
                for s in forms {
                    let _ = writeln!(
                        out,
                        "{}: {} points, {} stanzas of {}",
                        s.name,
                        s.point_count,
                        s.stanza_shape.len(),
                        s.stanza_shape.first().copied().unwrap_or(0)
                    );
                }
                out
            })))
        }
        FormCmd::Show { selector } => {
            let p = select_form(&selector)?;
            let doc = p.to_document();
            Ok(Output::ok(render(f, &doc, |doc| {
                let mut out = format!("{} ({} points)\n", doc.name, doc.point_count);
                for stanza in &doc.stanzas {
                    let _ = writeln!(out, "  [{}]", join(stanza, ", "));
                }
                out
            })))
        }
        FormCmd::Scaffold { selector, lines } => {
            let p = select_form(&selector)?;
            let text = read_text(&lines)?;
            let mut base: Vec<String> = text
                .lines()
                .map(|l| l.strip_suffix('\r').unwrap_or(l).to_string())
                .collect();
            while base.last().is_some_and(|l| l.trim().is_empty()) {
                base.pop();
            }
            let base = BaseLines::new(base).map_err(form_error)?;
            let poem = scaffold(&p, &base).map_err(form_error)?;
            let resp = ScaffoldResponse {
                poem: poem.render(),
                classes: p.classes(),
            };
            Ok(Output::ok(render(f, &resp, |r| r.poem.clone())))
        }
        FormCmd::Validate {
            selector,
            mode,
            threshold,
            poem,
        } => {
            if threshold.is_some() && mode != "fuzzy" {
                return Err("--threshold only applies to --mode fuzzy".into());
            }
            let threshold = if mode == "fuzzy" {
                effective_threshold(threshold)?
            } else {
                None
            };
            let mode = MatchMode::parse(&mode, threshold).map_err(form_error)?;
            let p = select_form(&selector)?;
            let poem = parse_poem(&read_text(&poem)?).map_err(form_error)?;
            let report = validate(&poem, &p, mode);
            let ok = report.overall_ok;
            let text = render(f, &report, |r| {
                let mut out = format!(
                    "form: {}\nmode: {} (threshold {})\nshape: {}\n",
                    r.form,
                    r.mode,
                    r.threshold,
                    if r.shape_ok {
                        "ok".to_string()
                    } else {
                        format!(
                            "expected {:?}, found {:?}",
                            r.expected_shape, r.actual_shape
                        )
                    }
                );
                for c in &r.classes {
                    let slots: Vec<String> = c
                        .positions
                        .iter()
                        .map(|[s, j]| format!("{s}.{j}"))
                        .collect();
                    let _ = writeln!(
                        out,
                        "  point {}: {} min similarity {:.3} [{}]",
                        c.point,
                        if c.ok { "ok  " } else { "FAIL" },
                        c.min_pairwise_similarity,
                        slots.join(" ")
                    );
                }
                for v in &r.violations {
                    let _ = writeln!(
                        out,
                        "  violation: point {} at {}.{} vs {}.{} (similarity {:.3})",
                        v.point, v.first[0], v.first[1], v.second[0], v.second[1], v.similarity
                    );
                }
                let _ = writeln!(out, "valid: {}", if r.overall_ok { "yes" } else { "no" });
                out
            });
            Ok(Output::verdict(text, ok))
        }
        FormCmd::Discover { poem, threshold } => {
            let t = effective_threshold(threshold)?.unwrap_or(DEFAULT_THRESHOLD);
            let poem = parse_poem(&read_text(&poem)?).map_err(form_error)?;
            let d = discover_structure(&poem, t).map_err(form_error)?;
            let ok = d.axiom_report.all_ok();
            let text = render(f, &d, |d| {
                let mut out = format!(
                    "threshold: {}\n{} clusters\n",
                    d.threshold,
                    d.clusters.len()
                );
                for c in &d.clusters {
                    let slots: Vec<String> =
                        c.members.iter().map(|[s, j]| format!("{s}.{j}")).collect();
                    let _ = writeln!(
                        out,
                        "  {}: {:?} [{}]",
                        c.id,
                        c.representative,
                        slots.join(" ")
                    );
                }
                if !d.dropped_stanzas.is_empty() {
                    let _ = writeln!(out, "dropped stanzas: {}", join(&d.dropped_stanzas, ", "));
                }
                out += "induced structure:\n";
                for line in &d.induced.lines {
                    let _ = writeln!(out, "  {{{}}}", join(line, ", "));
                }
                out + &axiom_text(&d.axiom_report)
            });
            Ok(Output::verdict(text, ok))
        }
    }
}

// ---- serve ----

fn parse_registration(spec: &str) -> Result<DifferenceSet> {
    let (n, set) = spec
        .split_once(':')
        .ok_or_else(|| format!("bad --diffset {spec:?}: expected N:SET"))?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| format!("bad modulus in {spec:?}"))?;
    parse_residues(n, set)
}

fn serve(args: ServeArgs) -> Result<Output> {
    let mut extra = Vec::new();
    for spec in &args.diffsets {
        let d = parse_registration(spec)?;
        for strategy in [Strategy::AnchorGrouped, Strategy::TranslationOrder] {
            extra.push(form_from_difference_set(&d, strategy).map_err(form_error)?);
        }
    }
    let addr = SocketAddr::new(args.bind, args.port);
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| format!("starting runtime: {e}"))?;
    eprintln!("listening on http://{addr}");
    rt.block_on(planeform_service::serve(addr, AppState::new(extra)))
        .map_err(|e| format!("serving on {addr}: {e}"))?;
    Ok(Output::ok(String::new()))
}
