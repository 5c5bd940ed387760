use std::io::Read;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use vallab::geometry::newton_polyhedron;
use vallab::{
    a_disc_2d, controlled_growth_check, default_test_family, howald_multiplier,
    jumping_number_oracle, lct_mixed_graded, log_discrepancy, min_zhou_n, power_sandwich, relative_value_2d,
    sigma_profile, singularity_compare, slope_report, tian_function, val_membership, value_on_graded,
    value_on_ideal, zhou_criterion, zhou_rescale, zv1_member, GradedSeq, LctValue, MonomialIdeal, Rational, Ray,
    TianFunction, WeightVector,
};

use crate::parse::{
    parse_approx_seq, parse_rational, parse_rational_list, scan_ideal, scan_sequence, DimContext, ScannedIdeal,
    SeqDesc,
};
use crate::CliError;

pub(crate) enum Failure {
    Help(String),
    Error(CliError),
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.into())
    }
}

#[derive(Parser, Debug)]
#[command(name = "vallab", version, about = "Exact jumping numbers, Tian functions and Zhou valuations of monomial data")]
struct Cli {
    /// Ambient dimension (default: inferred from variables and weights).
    #[arg(long, global = true)]
    dim: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixed jumping number lct(q, lambda*q'; a) or of a graded sequence.
    Lct(LctArgs),
    /// Tian function t -> lct(q, t*q'; a_•).
    Tian(TianArgs),
    /// Zhou-valuation certificates.
    #[command(subcommand)]
    Zhou(ZhouCmd),
    /// Compare singularities of two ideals.
    Compare(CompareArgs),
    /// Jumping number of an enlarged valuation sequence.
    EnlargeCheck(EnlargeArgs),
    /// Two-dimensional valuative-tree quantities.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Lattice-point multiplier-ideal oracle.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// v(q) <= lct^{q^k}(a_•^v)/k <= v(q) + A(v)/k.
    Sandwich(SandwichArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["a", "seq"]))]
struct LctArgs {
    #[arg(long, default_value = "1")]
    q: String,
    #[arg(long, default_value = "1")]
    qprime: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    lambda: String,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    seq: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["a", "seq"]))]
struct TianArgs {
    #[arg(long, default_value = "1")]
    q: String,
    #[arg(long)]
    qprime: String,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    seq: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum ZhouCmd {
    /// Rescale val_alpha to jumping number 1 and certify it.
    Rescale(AlphaQ),
    /// Tian-function test over a finite family of ideals.
    Test(ZhouTestArgs),
    /// Whether lct^q(a_•^v) <= 1.
    Membership(AlphaQ),
}

#[derive(Args, Debug)]
struct AlphaQ {
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value = "1")]
    q: String,
}

#[derive(Args, Debug)]
struct ZhouTestArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value = "1")]
    q: String,
    /// Test ideals separated by ';' (default: variables, their pairwise
    /// products and the maximal ideal).
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    aprime: String,
}

#[derive(Args, Debug)]
struct EnlargeArgs {
    /// Base sequence; must be a val: descriptor.
    #[arg(long)]
    seq: String,
    #[arg(long, default_value = "1")]
    q: String,
    #[arg(long)]
    qprime: String,
    #[arg(long)]
    beta: String,
}

#[derive(Subcommand, Debug)]
enum TreeCmd {
    /// Log discrepancy A(t) along the path.
    ADisc {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        t: String,
    },
    /// Least N certifying the Zhou property for m^N.
    MinN {
        #[arg(long)]
        seq: String,
    },
    /// Membership in ZV(1).
    Zv1 {
        #[arg(long)]
        seq: String,
    },
    /// sigma(t) = (A(t) + N)/t * alpha(v) at sample points.
    Sigma {
        #[arg(long)]
        seq: String,
        /// Defaults to the minimal N.
        #[arg(long)]
        n: Option<u64>,
        /// Comma-separated skewness values (default: segment endpoints).
        #[arg(long)]
        samples: Option<String>,
    },
    /// w(a_•^v) for w on the path to v, given by its skewness.
    Relative {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        w: String,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Jumping number by lattice search.
    Jn {
        #[arg(long, default_value = "1")]
        q: String,
        #[arg(long)]
        a: String,
    },
    /// Multiplier ideal J(c*a).
    Mult {
        #[arg(long)]
        a: String,
        #[arg(long)]
        c: String,
    },
    /// Controlled-growth check for b_t = J(t*a).
    Growth {
        #[arg(long)]
        a: String,
        /// Rays separated by ';', e.g. "1,0;3,2" (default: facet normals).
        #[arg(long)]
        rays: Option<String>,
        #[arg(long, default_value = "1/2,1,3/2,2")]
        t: String,
    },
}

#[derive(Args, Debug)]
struct SandwichArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    q: String,
    #[arg(long)]
    k: u32,
}

/// Reads ideal texts, substituting stdin for `-` (read at most once).
struct Input<'a> {
    stdin: &'a mut dyn Read,
    cached: Option<String>,
}

impl Input<'_> {
    fn text(&mut self, arg: &str) -> Result<String, CliError> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.cached.is_none() {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            self.cached = Some(s.trim().to_string());
        }
        Ok(self.cached.clone().unwrap_or_default())
    }

    fn ideal(&mut self, arg: &str, ctx: &mut DimContext) -> Result<ScannedIdeal, CliError> {
        let s = scan_ideal(&self.text(arg)?, 0)?;
        ctx.ideal(&s)?;
        Ok(s)
    }
}

fn weights(text: &str, ctx: &mut DimContext) -> Result<Vec<Rational>, CliError> {
    let w = parse_rational_list(text, 0)?;
    ctx.exact(w.len(), "the weight vector")?;
    Ok(w)
}

fn sequence(text: &str, ctx: &mut DimContext) -> Result<SeqDesc, CliError> {
    let s = scan_sequence(text, 0)?;
    ctx.sequence(&s)?;
    Ok(s)
}

fn r(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn opt_r(x: &Option<Rational>) -> Value {
    x.as_ref().map_or(Value::Null, r)
}

fn lct_json(v: &LctValue<Rational>) -> Value {
    Value::String(v.to_string())
}

fn ray_json(ray: &Ray) -> Value {
    json!(ray.coords())
}

fn rays_json(rays: &[Ray]) -> Value {
    Value::Array(rays.iter().map(ray_json).collect())
}

fn ideal_json(a: &MonomialIdeal) -> Value {
    json!({"ideal": a.to_string(), "generators": a.generators()})
}

pub(crate) fn dispatch<I, T>(args: I, stdin: &mut dyn Read, warnings: &mut Vec<String>) -> Result<String, Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Err(Failure::Help(e.render().to_string()))
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string().trim_end().to_string()).into()),
    };
    let mut input = Input { stdin, cached: None };
    let mut ctx = DimContext::new(cli.dim);
    let value = match cli.command {
        Command::Lct(a) => lct(a, &mut input, &mut ctx)?,
        Command::Tian(a) => {
            let (f, format) = tian(a, &mut input, &mut ctx)?;
            match format {
                Format::Json => tian_json(&f)?,
                Format::Tsv => return Ok(tian_tsv(&f)),
            }
        }
        Command::Zhou(z) => zhou(z, &mut input, &mut ctx)?,
        Command::Compare(a) => compare(a, &mut input, &mut ctx)?,
        Command::EnlargeCheck(a) => enlarge(a, &mut input, &mut ctx)?,
        Command::Tree(t) => tree(t, warnings)?,
        Command::Oracle(o) => oracle(o, &mut input, &mut ctx)?,
        Command::Sandwich(a) => sandwich(a, &mut input, &mut ctx)?,
    };
    Ok(format!("{value}\n"))
}

fn lct(args: LctArgs, input: &mut Input, ctx: &mut DimContext) -> Result<Value, CliError> {
    let q = input.ideal(&args.q, ctx)?;
    let qp = input.ideal(&args.qprime, ctx)?;
    let lambda = parse_rational(&args.lambda, 0)?;
    let a = args.a.as_deref().map(|a| input.ideal(a, ctx)).transpose()?;
    let seq_desc = args.seq.as_deref().map(|s| sequence(s, ctx)).transpose()?;
    let dim = ctx.finish()?;
    let (q, qp) = (q.resolve(dim)?, qp.resolve(dim)?);
    let a = a.map(|a| a.resolve(dim)).transpose()?;
    let seq = match (&a, seq_desc) {
        (Some(a), _) => GradedSeq::powers(a.clone())?,
        (None, Some(s)) => s.resolve(dim)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let res = lct_mixed_graded(&q, &lambda, &qp, &seq)?;
    if let Some(a) = &a {
        if lambda.is_zero() && dim <= 3 {
            let oracle = jumping_number_oracle::<Rational>(&q, a)?;
            if oracle != res.value {
                return Err(CliError::CrossCheck(format!(
                    "engine gives {} but the multiplier-ideal oracle gives {oracle}",
                    res.value
                )));
            }
        }
    }
    Ok(json!({"value": lct_json(&res.value), "rays": rays_json(&res.minimizing_rays)}))
}

fn tian(args: TianArgs, input: &mut Input, ctx: &mut DimContext) -> Result<(TianFunction, Format), CliError> {
    let q = input.ideal(&args.q, ctx)?;
    let qp = input.ideal(&args.qprime, ctx)?;
    let a = args.a.as_deref().map(|a| input.ideal(a, ctx)).transpose()?;
    let seq_desc = args.seq.as_deref().map(|s| sequence(s, ctx)).transpose()?;
    let dim = ctx.finish()?;
    let seq = match (a, seq_desc) {
        (Some(a), _) => GradedSeq::powers(a.resolve(dim)?)?,
        (None, Some(s)) => s.resolve(dim)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    Ok((tian_function(&q.resolve(dim)?, &qp.resolve(dim)?, &seq)?, args.format))
}

/// Value of the envelope at `t`, including the domain endpoint itself.
fn envelope_at(f: &TianFunction, t: &Rational) -> Rational {
    f.pieces.iter().map(|p| p.at(t)).min().expect("nonempty")
}

fn tian_json(f: &TianFunction) -> Result<Value, CliError> {
    let zero = Rational::zero();
    let pieces: Vec<Value> = f
        .pieces
        .iter()
        .map(|p| json!({"start": opt_r(&p.start), "slope": r(&p.slope), "intercept": r(&p.intercept), "ray": ray_json(&p.ray)}))
        .collect();
    let at_zero = if f.in_domain(&zero) {
        let s = slope_report(f)?;
        json!({"value": r(&f.eval(&zero)?), "left_slope": r(&s.left_at_zero), "right_slope": r(&s.right_at_zero)})
    } else {
        Value::Null
    };
    Ok(json!({
        "domain_min": opt_r(&f.domain_min),
        "pieces": pieces,
        "breakpoints": f.breakpoints().iter().map(r).collect::<Vec<_>>(),
        "slope_at_infinity": r(&f.slope_at_infinity()),
        "at_zero": at_zero,
    }))
}

fn tian_tsv(f: &TianFunction) -> String {
    let mut ts: Vec<Rational> = f.domain_min.iter().cloned().collect();
    ts.extend(f.breakpoints());
    let zero = Rational::zero();
    if f.in_domain(&zero) {
        ts.push(zero);
    }
    ts.sort();
    ts.dedup();
    let mut out = String::from("t\tslope\tvalue\n");
    for t in &ts {
        out.push_str(&format!("{t}\t{}\t{}\n", f.right_slope(t), envelope_at(f, t)));
    }
    out
}

fn zhou(cmd: ZhouCmd, input: &mut Input, ctx: &mut DimContext) -> Result<Value, CliError> {
    match cmd {
        ZhouCmd::Rescale(a) => {
            let w = weights(&a.alpha, ctx)?;
            let q = input.ideal(&a.q, ctx)?;
            let dim = ctx.finish()?;
            let cert = zhou_rescale(&WeightVector::new(w)?, &q.resolve(dim)?)?;
            Ok(json!({
                "scale": r(&cert.scale),
                "normalized": cert.normalized.entries().iter().map(r).collect::<Vec<_>>(),
                "lct": r(&cert.lct_check),
                "log_discrepancy": r(&cert.discrepancy_identity.0),
                "one_minus_value_q": r(&cert.discrepancy_identity.1),
            }))
        }
        ZhouCmd::Test(a) => {
            let w = weights(&a.alpha, ctx)?;
            let q = input.ideal(&a.q, ctx)?;
            let family = match &a.family {
                Some(f) => f
                    .split(';')
                    .map(|s| input.ideal(s, ctx))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![],
            };
            let dim = ctx.finish()?;
            let family = if family.is_empty() {
                default_test_family(dim)
            } else {
                family.iter().map(|f| f.resolve(dim)).collect::<Result<_, _>>()?
            };
            let verdict = zhou_criterion(&WeightVector::new(w)?, &q.resolve(dim)?, &family)?;
            Ok(json!({"pass": verdict.passed(), "verdict": verdict.to_string(), "family_size": family.len()}))
        }
        ZhouCmd::Membership(a) => {
            let w = weights(&a.alpha, ctx)?;
            let q = input.ideal(&a.q, ctx)?;
            let dim = ctx.finish()?;
            let alpha = WeightVector::new(w)?;
            let q = q.resolve(dim)?;
            let unit = MonomialIdeal::unit(dim);
            let lct = lct_mixed_graded(&q, &Rational::zero(), &unit, &GradedSeq::ValSeq(alpha.clone()))?.value;
            Ok(json!({"member": val_membership(&alpha, &q)?, "lct": lct_json(&lct)}))
        }
    }
}

fn compare(args: CompareArgs, input: &mut Input, ctx: &mut DimContext) -> Result<Value, CliError> {
    let a = input.ideal(&args.a, ctx)?;
    let b = input.ideal(&args.aprime, ctx)?;
    let dim = ctx.finish()?;
    let c = singularity_compare(&a.resolve(dim)?, &b.resolve(dim)?)?;
    Ok(json!({"order": c.order.as_str(), "witnesses": rays_json(&c.witnesses)}))
}

fn enlarge(args: EnlargeArgs, input: &mut Input, ctx: &mut DimContext) -> Result<Value, CliError> {
    let base = sequence(&args.seq, ctx)?;
    let q = input.ideal(&args.q, ctx)?;
    let qp = input.ideal(&args.qprime, ctx)?;
    let beta = parse_rational(&args.beta, 0)?;
    let dim = ctx.finish()?;
    let SeqDesc::Val(w) = &base else {
        return Err(CliError::Domain(
            "enlarge-check needs a valuation sequence (val:<weights>) to define 1/v(q')".into(),
        ));
    };
    let alpha = WeightVector::new(w.clone())?;
    let (q, qp) = (q.resolve(dim)?, qp.resolve(dim)?);
    let vqp = value_on_ideal(&alpha, &qp)?;
    if !vqp.is_positive() {
        return Err(CliError::Domain("v(q') must be positive for the threshold 1/v(q')".into()));
    }
    let enlarged = GradedSeq::enlarged(base.resolve(dim)?, qp.clone(), beta.clone())?;
    let res = lct_mixed_graded(&q, &Rational::zero(), &MonomialIdeal::unit(dim), &enlarged)?;
    let threshold = Rational::from_integer(1.into()) / vqp;
    Ok(json!({
        "beta": r(&beta),
        "lct": lct_json(&res.value),
        "threshold": r(&threshold),
        "above_threshold": beta >= threshold,
        "value_on_enlarged": r(&value_on_graded(&alpha, &enlarged)?),
    }))
}

fn tree(cmd: TreeCmd, warnings: &mut Vec<String>) -> Result<Value, CliError> {
    let load = |text: &str, warnings: &mut Vec<String>| -> Result<vallab::ApproxSeq, CliError> {
        let s = parse_approx_seq(text)?;
        warnings.extend(s.divisibility_warnings());
        Ok(s)
    };
    match cmd {
        TreeCmd::ADisc { seq, t } => {
            let s = load(&seq, warnings)?;
            let t = parse_rational(&t, 0)?;
            Ok(json!({"t": r(&t), "value": r(&a_disc_2d(&s, &t)?), "multiplicity": s.multiplicity_at(&t)?}))
        }
        TreeCmd::MinN { seq } => {
            let b = min_zhou_n(&load(&seq, warnings)?);
            Ok(json!({"N": b.n, "max_gap": r(&b.max_gap)}))
        }
        TreeCmd::Zv1 { seq } => {
            let s = load(&seq, warnings)?;
            Ok(json!({"member": zv1_member(&s), "multiplicity": s.final_multiplicity()}))
        }
        TreeCmd::Sigma { seq, n, samples } => {
            let s = load(&seq, warnings)?;
            let n = n.unwrap_or_else(|| min_zhou_n(&s).n);
            let ts = match samples {
                Some(text) => parse_rational_list(&text, 0)?,
                None => {
                    let mut ts: Vec<Rational> = s.segments().into_iter().flat_map(|(a, b, _)| [a, b]).collect();
                    ts.dedup();
                    ts
                }
            };
            let profile = sigma_profile(&s, n, &ts)?;
            let mut sorted = profile.clone();
            sorted.sort();
            let decreasing = sorted.windows(2).all(|w| w[0].1 > w[1].1);
            Ok(json!({
                "N": n,
                "profile": profile.iter().map(|(t, v)| json!({"t": r(t), "sigma": r(v)})).collect::<Vec<_>>(),
                "decreasing": decreasing,
            }))
        }
        TreeCmd::Relative { seq, w } => {
            let s = load(&seq, warnings)?;
            let w = parse_rational(&w, 0)?;
            Ok(json!({"value": r(&relative_value_2d(&w, &s)?)}))
        }
    }
}

fn parse_rays(text: &str, dim: usize) -> Result<Vec<Ray>, CliError> {
    let mut offset = 0;
    let mut rays = Vec::new();
    for part in text.split(';') {
        let coords = parse_rational_list(part, offset)?;
        if coords.len() != dim {
            return Err(CliError::Domain(format!("ray {part:?} has {} coordinates, expected {dim}", coords.len())));
        }
        let ray = Ray::from_scalars(&coords)
            .ok_or_else(|| CliError::Domain(format!("{part:?} is not a nonzero nonnegative ray")))?;
        rays.push(ray);
        offset += part.len() + 1;
    }
    Ok(rays)
}

fn oracle(cmd: OracleCmd, input: &mut Input, ctx: &mut DimContext) -> Result<Value, CliError> {
    match cmd {
        OracleCmd::Jn { q, a } => {
            let q = input.ideal(&q, ctx)?;
            let a = input.ideal(&a, ctx)?;
            let dim = ctx.finish()?;
            let v = jumping_number_oracle::<Rational>(&q.resolve(dim)?, &a.resolve(dim)?)?;
            Ok(json!({"value": lct_json(&v)}))
        }
        OracleCmd::Mult { a, c } => {
            let a = input.ideal(&a, ctx)?;
            let c = parse_rational(&c, 0)?;
            let dim = ctx.finish()?;
            let res = howald_multiplier(&a.resolve(dim)?, &c)?;
            let mut v = ideal_json(&res.ideal);
            v["c"] = r(&c);
            Ok(v)
        }
        OracleCmd::Growth { a, rays, t } => {
            let a = input.ideal(&a, ctx)?;
            let dim = ctx.finish()?;
            let a = a.resolve(dim)?;
            let rays = match rays {
                Some(text) => parse_rays(&text, dim)?,
                None => newton_polyhedron::<Rational>(&a)?
                    .nontrivial_facets()
                    .map(|f| f.normal.clone())
                    .collect(),
            };
            let ts = parse_rational_list(&t, 0)?;
            let report = controlled_growth_check(&a, &rays, &ts)?;
            Ok(json!({
                "passed": report.passed(),
                "rows": report.rows.iter().map(|row| json!({
                    "ray": ray_json(&row.ray), "t": r(&row.t), "value": r(&row.value), "slack": r(&row.slack),
                })).collect::<Vec<_>>(),
            }))
        }
    }
}

fn sandwich(args: SandwichArgs, input: &mut Input, ctx: &mut DimContext) -> Result<Value, CliError> {
    let w = weights(&args.alpha, ctx)?;
    let q = input.ideal(&args.q, ctx)?;
    let dim = ctx.finish()?;
    let alpha = WeightVector::new(w)?;
    let rep = power_sandwich(&alpha, &q.resolve(dim)?, args.k)?;
    Ok(json!({
        "k": rep.k,
        "gamma": r(&rep.gamma),
        "lower": r(&rep.lower),
        "middle": r(&rep.middle),
        "upper": r(&rep.upper),
        "log_discrepancy": r(&log_discrepancy(&alpha)),
        "holds": rep.holds(),
        "upper_is_tight": rep.upper_is_tight(),
    }))
}
