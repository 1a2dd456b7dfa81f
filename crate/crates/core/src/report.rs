//! Input parsing, run reports and golden files.
//!
//! A report has a machine block, which holds exponent vectors and integer data
//! only, and a display block rendered from it.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rat};
use crate::cohomology::{self, FaceCheck, GradedDims};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polytope::{validate_polytope, Edge, LatticePolytope, TwoFace};
use crate::scheme::{self, CoordinateChoice, Decomposition};
use crate::versal::{self, FlatnessReport, Quadruple};

const MAX_EDGES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeInput {
    #[serde(default)]
    pub name: Option<String>,
    pub vertices: Vec<Vec<i64>>,
}

pub fn parse_input(text: &str) -> Result<PolytopeInput> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn polytope_from_input(input: &PolytopeInput) -> Result<LatticePolytope> {
    validate_polytope(input.name.clone(), &input.vertices)
}

/// Read and validate a polytope file. The file stem is used when the input
/// carries no name.
pub fn load_polytope(path: &Path) -> Result<LatticePolytope> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut input = parse_input(&text)?;
    if input.name.is_none() {
        input.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    polytope_from_input(&input)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Scheme,
    Singularity,
    Versal,
    Components,
    Cohomology,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Scheme => "scheme",
            Command::Singularity => "singularity",
            Command::Versal => "versal",
            Command::Components => "components",
            Command::Cohomology => "cohomology",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest number of Hilbert-basis elements summed into a candidate degree.
    pub degree_bound: usize,
    /// Specialise the lifted family to the base presentation.
    pub base_epsilon: bool,
    /// Multiples `k` of `R*`; `None` means `1..=max k0 + 1`.
    pub degrees: Option<Vec<u32>>,
    /// Scan low degrees in a box of radius 2 in every dimension instead of
    /// radius 1 for polygons only.
    pub all_low_degrees: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree_bound: versal::DEFAULT_DEGREE_BOUND, base_epsilon: false, degrees: None, all_low_degrees: false }
    }
}

/// An exact rational coefficient as `[numerator, denominator]`.
pub type Coefficient = [i64; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exp: Vec<u32>,
    pub coeff: Coefficient,
}

/// A polynomial as exponent vectors, terms in descending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyData {
    pub nvars: usize,
    pub terms: Vec<Term>,
}

fn coefficient(c: &Rat) -> Result<Coefficient> {
    match (c.numer().to_i64(), c.denom().to_i64()) {
        (Some(a), Some(b)) => Ok([a, b]),
        _ => Err(Error::ReportedFailure(format!("coefficient {c} does not fit in 64 bits"))),
    }
}

fn from_coefficient(c: &Coefficient) -> Rat {
    rat(c[0]) / rat(c[1])
}

impl PolyData {
    pub fn from_poly(p: &Poly) -> Result<PolyData> {
        let mut terms: Vec<(&Vec<u32>, &Rat)> = p.terms.iter().collect();
        terms.sort_by(|a, b| crate::poly::grlex(b.0, a.0));
        let terms = terms
            .into_iter()
            .map(|(m, c)| Ok(Term { exp: m.clone(), coeff: coefficient(c)? }))
            .collect::<Result<_>>()?;
        Ok(PolyData { nvars: p.nvars, terms })
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for t in &self.terms {
            p.add_term(t.exp.clone(), from_coefficient(&t.coeff));
        }
        p
    }
}

fn polys(ps: &[Poly]) -> Result<Vec<PolyData>> {
    ps.iter().map(PolyData::from_poly).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSection {
    pub ambient: usize,
    pub dim: usize,
    /// Vertices in input coordinates.
    pub vertices: Vec<Vec<i64>>,
    /// Input coordinates minus internal coordinates; the base sits at the origin internally.
    pub shift: Vec<i64>,
    pub base: usize,
    pub edges: Vec<Edge>,
    pub two_faces: Vec<TwoFace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorData {
    pub face: usize,
    pub k: u32,
    pub coord: usize,
    /// Ring `t_1..t_N`.
    pub poly: PolyData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseData {
    /// `s_j = t_a - t_b` as 0-based pairs `(a, b)`.
    pub coords: Vec<(usize, usize)>,
    /// `t_i = t + sum_j param[i][j] s_j`.
    pub param: Vec<Vec<Coefficient>>,
    /// Ring `s_1..s_m`.
    pub residual: Vec<PolyData>,
    pub monomial: bool,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatData {
    pub summands: Vec<Vec<i64>>,
    pub upstairs_dim: usize,
    pub downstairs_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeSection {
    pub summand_dim: usize,
    pub summand_basis: Vec<Vec<i64>>,
    pub cone_rays: Vec<Vec<i64>>,
    /// Vertices of the summand polytope of each ray.
    pub ray_summands: Vec<Vec<Vec<i64>>>,
    pub k0: Vec<u32>,
    pub generators: Vec<GeneratorData>,
    /// Ring `u_2..u_N` with `u_i = t_i - t_1`.
    pub bar_generators: Vec<PolyData>,
    pub tangent_dim: usize,
    pub base: BaseData,
    pub decompositions: Vec<Decomposition>,
    /// `(i, j)`: decomposition `i` properly refines decomposition `j`.
    pub refinements: Vec<(usize, usize)>,
    pub components: Vec<FlatData>,
    /// `(i, j, dim)`: downstairs dimension of the intersection of two components.
    pub intersections: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularitySection {
    /// Hilbert basis of the dual cone; the last element is `[0,...,0,1]`.
    pub elements: Vec<Vec<i64>>,
    /// Support vertex index and `eta` vector of each boundary element.
    pub support: Vec<usize>,
    pub eta: Vec<Vec<i64>>,
    pub degree_bound: usize,
    /// `t^alpha z^a - t^beta z^b` in the ring `z_1..z_w, t`.
    pub equations: Vec<Quadruple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftData {
    pub quadruple: Quadruple,
    pub p: Vec<u32>,
    pub a_exp: Vec<u32>,
    pub b_exp: Vec<u32>,
    /// Ring `Z_1..Z_w, t_1..t_N`.
    pub poly: PolyData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonData {
    pub base: BaseData,
    /// Ring `z_1..z_w, t, s_1..s_m`, reduced modulo the residual monomials.
    pub equations: Vec<PolyData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VersalSection {
    pub lifts: Vec<LiftData>,
    pub flatness: FlatnessReport,
    pub epsilon: Option<EpsilonData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentData {
    pub summands: Vec<Vec<i64>>,
    /// Vertices of each summand polytope.
    pub polytopes: Vec<Vec<Vec<i64>>>,
    /// Generators `(r; e^k)` of the cone of the total space.
    pub generators: Vec<Vec<i64>>,
    pub downstairs_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KodairaSpencerData {
    pub rank: usize,
    pub kills_diagonal: bool,
    pub kills_vertex_relations: bool,
    pub right_kernel_is_vertex_relations: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologySection {
    pub dims: Vec<GradedDims>,
    pub kodaira_spencer: KodairaSpencerData,
    pub w: Vec<(u32, usize)>,
    pub face_checks: Vec<FaceCheck>,
}

/// The machine block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub command: String,
    pub polytope: PolytopeSection,
    pub scheme: Option<SchemeSection>,
    pub singularity: Option<SingularitySection>,
    pub versal: Option<VersalSection>,
    pub components: Option<Vec<ComponentData>>,
    pub cohomology: Option<CohomologySection>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub machine: Report,
    pub display: String,
}

impl RunReport {
    pub fn new(machine: Report) -> RunReport {
        let display = render_display(&machine);
        RunReport { machine, display }
    }
}

pub fn run(command: Command, p: &LatticePolytope, opts: &Options) -> Result<RunReport> {
    Ok(RunReport::new(build(command, p, opts)?))
}

fn polytope_section(p: &LatticePolytope) -> PolytopeSection {
    PolytopeSection {
        ambient: p.ambient,
        dim: p.dim,
        vertices: p.input_vertices(),
        shift: p.shift.clone(),
        base: p.base,
        edges: p.edges.clone(),
        two_faces: p.two_faces.clone(),
    }
}

fn base_data(bp: &scheme::BasePresentation) -> Result<BaseData> {
    Ok(BaseData {
        coords: bp.coords.clone(),
        param: bp.param.iter().map(|r| r.iter().map(coefficient).collect::<Result<_>>()).collect::<Result<_>>()?,
        residual: polys(&bp.residual)?,
        monomial: bp.monomial,
        integral: bp.integral,
    })
}

fn check_size(p: &LatticePolytope) -> Result<()> {
    if p.num_edges() > MAX_EDGES {
        return Err(Error::InvalidInput(format!("{} edges exceed the supported {MAX_EDGES}", p.num_edges())));
    }
    Ok(())
}

pub fn scheme_section(p: &LatticePolytope) -> Result<SchemeSection> {
    check_size(p)?;
    let space = scheme::summand_space(p);
    let cone = scheme::summand_cone(p);
    let ray_summands = cone.rays.iter().map(|r| scheme::summand_polytope(p, r)).collect::<Result<_>>()?;
    let ideal = scheme::scheme_ideal(p);
    let generators = ideal
        .generators
        .iter()
        .map(|g| Ok(GeneratorData { face: g.face, k: g.k, coord: g.coord, poly: PolyData::from_poly(&g.poly)? }))
        .collect::<Result<_>>()?;
    let bp = scheme::base_presentation(p, &CoordinateChoice::Auto)?;
    let decompositions = scheme::lattice_decompositions(p);
    let mut refinements = vec![];
    for (i, a) in decompositions.iter().enumerate() {
        for (j, b) in decompositions.iter().enumerate() {
            if i != j && a.refines(b) {
                refinements.push((i, j));
            }
        }
    }
    let rc = scheme::reduced_components(p);
    Ok(SchemeSection {
        summand_dim: space.dim(),
        summand_basis: space.basis.clone(),
        cone_rays: cone.rays.clone(),
        ray_summands,
        k0: ideal.k0.clone(),
        generators,
        bar_generators: polys(&scheme::bar_generators(p))?,
        tangent_dim: scheme::tangent_dimension(p),
        base: base_data(&bp)?,
        decompositions,
        refinements,
        components: rc
            .flats
            .iter()
            .map(|f| FlatData {
                summands: f.decomposition.summands.clone(),
                upstairs_dim: f.upstairs_dim,
                downstairs_dim: f.downstairs_dim,
            })
            .collect(),
        intersections: rc.intersections,
    })
}

pub fn singularity_section(p: &LatticePolytope, opts: &Options) -> Result<SingularitySection> {
    let g = versal::gorenstein(p)?;
    let table = versal::eta_table(p, &g);
    let pres = versal::gorenstein_equations(p, &g, opts.degree_bound);
    for (v, eta) in table.eta.iter().enumerate() {
        if eta.iter().sum::<i64>() != table.eta0[v] || eta.iter().any(|x| *x < 0) {
            return Err(Error::ReportedFailure(format!("eta of element {} does not split eta0", v + 1)));
        }
    }
    Ok(SingularitySection {
        elements: g.elements.clone(),
        support: table.a.clone(),
        eta: table.eta.clone(),
        degree_bound: pres.degree_bound,
        equations: pres.equations,
    })
}

pub fn versal_section(p: &LatticePolytope, opts: &Options) -> Result<VersalSection> {
    check_size(p)?;
    let g = versal::gorenstein(p)?;
    let pres = versal::gorenstein_equations(p, &g, opts.degree_bound);
    let fam = versal::lift_equations(p, &g, &pres)?;
    let diag = versal::specialize_family(&fam, &versal::diagonal(p.num_edges()), &[]);
    if diag != pres.polys() {
        return Err(Error::ReportedFailure("lifted family does not restrict to the equations".into()));
    }
    let flatness = versal::flatness_smoke_check(p, &g, &pres, &fam)?;
    let lifts = fam
        .lifts
        .iter()
        .map(|l| {
            Ok(LiftData {
                quadruple: l.quadruple.clone(),
                p: l.p.clone(),
                a_exp: l.a_exp.clone(),
                b_exp: l.b_exp.clone(),
                poly: PolyData::from_poly(&l.poly)?,
            })
        })
        .collect::<Result<_>>()?;
    let epsilon = if opts.base_epsilon {
        let bp = scheme::base_presentation(p, &CoordinateChoice::Auto)?;
        let (images, killed) = versal::base_specialization(&bp)
            .map_err(|_| Error::InvalidInput("the residual base ideal is not monomial".into()))?;
        let eqs = if images.is_empty() {
            vec![]
        } else {
            versal::specialize_family(&fam, &images, &killed)
        };
        Some(EpsilonData { base: base_data(&bp)?, equations: polys(&eqs)? })
    } else {
        None
    };
    Ok(VersalSection { lifts, flatness, epsilon })
}

pub fn components_section(p: &LatticePolytope) -> Result<Vec<ComponentData>> {
    check_size(p)?;
    let g = versal::gorenstein(p)?;
    scheme::reduced_components(p)
        .flats
        .iter()
        .map(|f| {
            let c = versal::component_total_space(p, &f.decomposition)?;
            c.check_lifts(p, &g)?;
            Ok(ComponentData {
                summands: f.decomposition.summands.clone(),
                polytopes: c.summands.clone(),
                generators: c.generators.clone(),
                downstairs_dim: f.downstairs_dim,
            })
        })
        .collect()
}

pub fn cohomology_section(p: &LatticePolytope, opts: &Options) -> Result<CohomologySection> {
    check_size(p)?;
    let g = versal::gorenstein(p)?;
    let multiples = opts.degrees.clone().unwrap_or_else(|| cohomology::default_multiples(p));
    if multiples.contains(&0) {
        return Err(Error::InvalidInput("degree multiples must be positive".into()));
    }
    let low = if opts.all_low_degrees {
        Some(2)
    } else if p.dim == 2 {
        Some(1)
    } else {
        None
    };
    let dims = cohomology::graded_dims(p, &g, &multiples, low);
    let ks = cohomology::kodaira_spencer(p, &g);
    let w = cohomology::w_dimensions(p);
    let face_checks = match low {
        Some(bound) => cohomology::low_degrees(p, bound)
            .iter()
            .map(|r| cohomology::face_t1_crosscheck(p, &g, r))
            .collect::<Result<Vec<_>>>()?,
        None => vec![],
    };
    let dim_v = scheme::summand_space(p).dim();
    let mut r_star = vec![0; g.n + 1];
    r_star[g.n] = 1;
    let t1 = cohomology::t1_dimension(p, &g, &r_star);
    let mut failures = vec![];
    if t1 + 1 != dim_v {
        failures.push(format!("T1(-R*) = {t1} but dim V = {dim_v}"));
    }
    if !(ks.kills_diagonal && ks.kills_vertex_relations && ks.right_kernel_is_vertex_relations) || ks.rank != t1 {
        failures.push("Kodaira-Spencer pairing identities".to_string());
    }
    let k0 = scheme::scheme_ideal(p).max_k0();
    for &(k, wk) in &w {
        r_star[g.n] = k as i64;
        let t2 = cohomology::t2_dimension(p, &g, &r_star);
        if wk > t2 || (k > k0 && wk != 0) {
            failures.push(format!("W_{k} = {wk} against T2 = {t2}"));
        }
    }
    if let Some(c) = face_checks.iter().find(|c| !c.agrees) {
        failures.push(format!("face check in degree {:?}", c.degree));
    }
    if !failures.is_empty() {
        return Err(Error::ReportedFailure(failures.join("; ")));
    }
    Ok(CohomologySection {
        dims,
        kodaira_spencer: KodairaSpencerData {
            rank: ks.rank,
            kills_diagonal: ks.kills_diagonal,
            kills_vertex_relations: ks.kills_vertex_relations,
            right_kernel_is_vertex_relations: ks.right_kernel_is_vertex_relations,
        },
        w,
        face_checks,
    })
}

/// Assemble the machine block. `analyze` includes every section; the
/// singularity sections are skipped for polytopes that are not full-dimensional.
pub fn build(command: Command, p: &LatticePolytope, opts: &Options) -> Result<Report> {
    let mut r = Report {
        name: p.name.clone().unwrap_or_else(|| "polytope".into()),
        command: command.name().into(),
        polytope: polytope_section(p),
        scheme: None,
        singularity: None,
        versal: None,
        components: None,
        cohomology: None,
    };
    let full = p.dim == p.ambient;
    match command {
        Command::Analyze => {
            r.scheme = Some(scheme_section(p)?);
            if full {
                r.singularity = Some(singularity_section(p, opts)?);
                r.versal = Some(versal_section(p, opts)?);
                r.components = Some(components_section(p)?);
                r.cohomology = Some(cohomology_section(p, opts)?);
            }
        }
        Command::Scheme => r.scheme = Some(scheme_section(p)?),
        Command::Singularity => r.singularity = Some(singularity_section(p, opts)?),
        Command::Versal => {
            r.singularity = Some(singularity_section(p, opts)?);
            r.versal = Some(versal_section(p, opts)?);
        }
        Command::Components => {
            r.scheme = Some(scheme_section(p)?);
            r.components = Some(components_section(p)?);
        }
        Command::Cohomology => r.cohomology = Some(cohomology_section(p, opts)?),
    }
    Ok(r)
}

pub fn to_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialise");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Report> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn names(prefix: &str, from: usize, to: usize) -> Vec<String> {
    (from..=to).map(|i| format!("{prefix}{i}")).collect()
}

/// Variable names of the singularity ring `z_1..z_w, t`.
pub fn z_t_names(w: usize) -> Vec<String> {
    let mut v = names("z", 1, w);
    v.push("t".into());
    v
}

/// Variable names of the lift ring `Z_1..Z_w, t_1..t_N`.
pub fn lift_names(w: usize, n: usize) -> Vec<String> {
    [names("Z", 1, w), names("t", 1, n)].concat()
}

fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn list_str(vs: &[Vec<i64>]) -> String {
    vs.iter().map(|v| vec_str(v)).collect::<Vec<_>>().join(" ")
}

fn affine_str(row: &[Coefficient]) -> String {
    let mut out = Poly::var(row.len() + 1, 0);
    for (j, c) in row.iter().enumerate() {
        let mut m = vec![0; row.len() + 1];
        m[j + 1] = 1;
        out.add_term(m, from_coefficient(c));
    }
    let mut names = vec!["t".to_string()];
    names.extend(names_s(row.len()));
    out.render(&names)
}

/// Positive terms first, each group in descending graded-lex order.
pub fn render_signed(p: &Poly, names: &[String]) -> String {
    let mut terms: Vec<(&Vec<u32>, &Rat)> = p.terms.iter().collect();
    terms.sort_by(|a, b| {
        use num_traits::Signed;
        a.1.is_negative().cmp(&b.1.is_negative()).then_with(|| crate::poly::grlex(b.0, a.0))
    });
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let mut one = Poly::zero(p.nvars);
        one.add_term(m.clone(), c.clone());
        let t = one.render(names);
        if i == 0 {
            s.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(&t);
        }
    }
    s
}

fn names_s(m: usize) -> Vec<String> {
    names("s", 1, m)
}

fn render_base(out: &mut String, b: &BaseData, indent: &str) {
    let coords: Vec<String> =
        b.coords.iter().enumerate().map(|(j, (x, y))| format!("s{} = t{} - t{}", j + 1, x + 1, y + 1)).collect();
    let _ = writeln!(out, "{indent}coordinates: {}", if coords.is_empty() { "none".into() } else { coords.join(", ") });
    for (i, row) in b.param.iter().enumerate() {
        let _ = writeln!(out, "{indent}  t{} = {}", i + 1, affine_str(row));
    }
    let s = names_s(b.coords.len());
    let res: Vec<String> = b.residual.iter().map(|q| render_signed(&q.to_poly(), &s)).collect();
    let _ = writeln!(out, "{indent}residual ideal: ({})", res.join(", "));
    let _ = writeln!(out, "{indent}monomial: {}, integral: {}", b.monomial, b.integral);
}

/// The display block: a pure function of the machine block.
pub fn render_display(r: &Report) -> String {
    let mut out = String::new();
    let pt = &r.polytope;
    let _ = writeln!(out, "{} [{}]", r.name, r.command);
    let _ = writeln!(out, "polytope: dim {} in Z^{}, {} vertices, {} edges", pt.dim, pt.ambient, pt.vertices.len(), pt.edges.len());
    let _ = writeln!(out, "  vertices: {}", list_str(&pt.vertices));
    let _ = writeln!(out, "  base vertex: {}", vec_str(&pt.vertices[pt.base]));
    for (i, e) in pt.edges.iter().enumerate() {
        let _ = writeln!(out, "  d{} = {}  ({} -> {})", i + 1, vec_str(&e.dir), e.tail + 1, e.head + 1);
    }
    for (f, face) in pt.two_faces.iter().enumerate() {
        let _ = writeln!(out, "  2-face {}: signs {}", f + 1, vec_str(&face.signs));
    }
    let n = pt.edges.len();
    if let Some(s) = &r.scheme {
        let t = names("t", 1, n);
        let u = names("u", 2, n);
        let _ = writeln!(out, "scheme:");
        let _ = writeln!(out, "  dim V = {}, tangent space of the reduced base = {}", s.summand_dim, s.tangent_dim);
        let _ = writeln!(out, "  rays of C(Q):");
        for (ray, poly) in s.cone_rays.iter().zip(&s.ray_summands) {
            let _ = writeln!(out, "    {}  summand {}", vec_str(ray), list_str(poly));
        }
        let _ = writeln!(out, "  strip bounds k0: {}", vec_str(&s.k0.iter().map(|x| *x as i64).collect::<Vec<_>>()));
        let _ = writeln!(out, "  generators:");
        for g in &s.generators {
            let _ = writeln!(out, "    [face {} k {} x{}] {}", g.face + 1, g.k, g.coord + 1, render_signed(&g.poly.to_poly(), &t));
        }
        let _ = writeln!(out, "  in u_i = t_i - t1:");
        for g in &s.bar_generators {
            let _ = writeln!(out, "    {}", render_signed(&g.to_poly(), &u));
        }
        let _ = writeln!(out, "  base presentation:");
        render_base(&mut out, &s.base, "    ");
        let _ = writeln!(out, "  lattice decompositions:");
        for (i, d) in s.decompositions.iter().enumerate() {
            let _ = writeln!(out, "    #{} {}", i + 1, list_str(&d.summands));
        }
        let pairs: Vec<String> = s.refinements.iter().map(|(i, j)| format!("#{} < #{}", i + 1, j + 1)).collect();
        let _ = writeln!(out, "  refinements: {}", if pairs.is_empty() { "none".into() } else { pairs.join(", ") });
        let _ = writeln!(out, "  reduced components:");
        for (i, f) in s.components.iter().enumerate() {
            let _ = writeln!(out, "    C{}: dim {} (upstairs {}), summands {}", i + 1, f.downstairs_dim, f.upstairs_dim, list_str(&f.summands));
        }
        for (i, j, d) in &s.intersections {
            let _ = writeln!(out, "    C{} meets C{} in dim {}", i + 1, j + 1, d);
        }
    }
    let w = r.singularity.as_ref().map(|s| s.elements.len() - 1);
    if let Some(s) = &r.singularity {
        let w = s.elements.len() - 1;
        let names = z_t_names(w);
        let _ = writeln!(out, "singularity:");
        for (v, e) in s.elements.iter().enumerate() {
            if v < w {
                let _ = writeln!(out, "  z{} = {}  a = vertex {}  eta = {}", v + 1, vec_str(e), s.support[v] + 1, vec_str(&s.eta[v]));
            } else {
                let _ = writeln!(out, "  t = {}", vec_str(e));
            }
        }
        let _ = writeln!(out, "  equations (degree bound {}):", s.degree_bound);
        for q in &s.equations {
            let _ = writeln!(out, "    {}", render_signed(&q.poly(), &names));
        }
    }
    if let Some(v) = &r.versal {
        let w = w.unwrap_or_else(|| v.lifts.first().map(|l| l.p.len()).unwrap_or(0));
        let names = lift_names(w, n);
        let _ = writeln!(out, "versal family:");
        for l in &v.lifts {
            let _ = writeln!(out, "    {}", render_signed(&l.poly.to_poly(), &names));
        }
        let _ = writeln!(
            out,
            "  flatness relations checked: (i) {}, (ii) {}, (iii) {}",
            v.flatness.relation_i, v.flatness.relation_ii, v.flatness.relation_iii
        );
        if let Some(e) = &v.epsilon {
            let _ = writeln!(out, "  specialised to the base:");
            render_base(&mut out, &e.base, "    ");
            let mut names = z_t_names(w);
            names.extend(names_s(e.base.coords.len()));
            for q in &e.equations {
                let _ = writeln!(out, "    {}", render_signed(&q.to_poly(), &names));
            }
        }
    }
    if let Some(cs) = &r.components {
        let _ = writeln!(out, "component total spaces:");
        for (i, c) in cs.iter().enumerate() {
            let _ = writeln!(out, "  C{} (dim {}):", i + 1, c.downstairs_dim);
            for (k, poly) in c.polytopes.iter().enumerate() {
                let _ = writeln!(out, "    R{} = conv {}", k + 1, list_str(poly));
            }
            let _ = writeln!(out, "    cone generators: {}", list_str(&c.generators));
        }
    }
    if let Some(c) = &r.cohomology {
        let _ = writeln!(out, "cohomology:");
        let _ = writeln!(out, "  {:<16} {:>4} {:>4} {:>4}", "degree", "T1", "T2", "W");
        for d in &c.dims {
            let w = d.w.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "  -{:<15} {:>4} {:>4} {:>4}", vec_str(&d.degree), d.t1, d.t2, w);
        }
        let ks = &c.kodaira_spencer;
        let _ = writeln!(
            out,
            "  Kodaira-Spencer rank {}; kills diagonal {}, kills vertex relations {}, kernel exact {}",
            ks.rank, ks.kills_diagonal, ks.kills_vertex_relations, ks.right_kernel_is_vertex_relations
        );
        let ws: Vec<String> = c.w.iter().map(|(k, d)| format!("{k}:{d}")).collect();
        let _ = writeln!(out, "  W: {}", ws.join(", "));
        if !c.face_checks.is_empty() {
            let agree = c.face_checks.iter().filter(|f| f.agrees).count();
            let _ = writeln!(out, "  face checks: {agree}/{} agree", c.face_checks.len());
            for f in c.face_checks.iter().filter(|f| f.raw > 0) {
                let _ = writeln!(out, "    -{}: face of {} vertices, dim V(face) {}, T1 {}", vec_str(&f.degree), f.face.len(), f.raw, f.computed);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenStatus {
    Match,
    Mismatch,
    Missing,
    Written,
}

/// Compare `actual` with the golden file at `path`, or rewrite it when `bless`.
pub fn check_golden(path: &Path, actual: &str, bless: bool) -> Result<GoldenStatus> {
    if bless {
        std::fs::write(path, actual).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        return Ok(GoldenStatus::Written);
    }
    match std::fs::read_to_string(path) {
        Ok(expected) if expected == actual => Ok(GoldenStatus::Match),
        Ok(_) => Ok(GoldenStatus::Mismatch),
        Err(_) => Ok(GoldenStatus::Missing),
    }
}
