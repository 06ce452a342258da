use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use mext_core::abelian::{canonical_decomposition, order_census, wedge_power};
use mext_core::cocycles::{alternator, mu_from_omega, standard_cocycle, Cocycle3, CocycleType};
use mext_core::extensions::build_m_k_zeta;
use mext_core::filtration::{cohomology_orders, cup_square_kernel, kunneth_check, twofun_recursion, Factors};
use mext_core::verify::{self, Suite};
use mext_core::{BaseCategory, FinAbGroup, MextError, MinExt, QuadForm, QZ};

#[derive(Parser)]
#[command(name = "mext", version, about = "Minimal nondegenerate extensions of pointed symmetric categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Finite abelian group invariants.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Filtration factors of Mext(Rep(A, t)).
    Factors {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        json: bool,
    },
    /// Pointed minimal extensions (JSON in, JSON out).
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Explicit 3-cocycles on A.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Runs the built-in example suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct BaseArgs {
    /// Moduli, e.g. "2,2".
    #[arg(long)]
    group: String,
    /// Coordinates of t, e.g. "0,1".
    #[arg(long)]
    t: String,
}

impl BaseArgs {
    fn parse(&self) -> Result<BaseCategory, MextError> {
        BaseCategory::parse(&self.group, &self.t)
    }
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Canonical form, element-order census, ∧², ∧³ and cohomology orders.
    Info {
        #[arg(long)]
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Order ledger for H³(G × L).
    Kunneth {
        #[arg(long)]
        g: String,
        #[arg(long)]
        l: String,
    },
    /// Order ledger |Mext(E₁ ⊠ Rep(Z_N))| for splitting off the cyclic factor at INDEX.
    Recursion {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Kernel of the cup square on H²(Z_2^r, Z_2).
    Cup {
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Subcommand)]
enum ExtCmd {
    /// `A × Â` glued along the pairing, twisted by a quadratic form q on A.
    BuildTrivial {
        #[command(flatten)]
        base: BaseArgs,
        /// Diagonal values q(e_i), comma separated; a single value is repeated.
        #[arg(long, default_value = "0")]
        q: String,
        /// Cross terms b(e_i, e_j), i < j, row-major.
        #[arg(long)]
        cross: Option<String>,
    },
    /// M_{k,ζ} over Rep(Z_{2^n}^f), ζ given by its odd exponent.
    BuildMkzeta {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        zeta: i64,
    },
    Product { a: String, b: String },
    Reverse { m: String },
    Order {
        m: String,
        #[arg(long, default_value_t = 64)]
        cap: u64,
    },
    /// Central charge as "k/16".
    Charge { m: String },
    Equiv { a: String, b: String },
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// A standard representative of type I, II or III.
    Standard {
        #[arg(long)]
        group: String,
        #[arg(long = "type")]
        ty: String,
        /// Generator indices (0-based), e.g. "0,1".
        #[arg(long)]
        indices: String,
        #[arg(long, default_value_t = 1)]
        coeff: i64,
    },
    /// Checks the 3-cocycle identity on all quadruples.
    Check { w: String },
    Alternator { w: String },
    /// The commutator form of μ_x.
    Mu {
        w: String,
        #[arg(long)]
        x: String,
    },
}

enum Failure {
    Math(MextError),
    Input(String),
    Checks,
}

impl From<MextError> for Failure {
    fn from(e: MextError) -> Self {
        if e.is_precondition() {
            Failure::Math(e)
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Out = Result<(), Failure>;

/// Inline JSON (starts with `{`), `-` for stdin, or a file path.
fn load<T: DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| {
        // Validation errors from our constructors arrive as custom data errors;
        // shape errors generated by serde itself are input errors.
        const SHAPE: [&str; 6] = [
            "missing field",
            "unknown field",
            "invalid type",
            "invalid length",
            "invalid value",
            "unknown variant",
        ];
        let msg = e.to_string();
        if e.is_data() && !SHAPE.iter().any(|p| msg.starts_with(p)) {
            Failure::Math(MextError::Invariant(e.to_string()))
        } else {
            Failure::Input(format!("JSON: {e}"))
        }
    })
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn show(g: &FinAbGroup) -> String {
    let c = canonical_decomposition(g);
    if c.is_trivial() {
        return "0".into();
    }
    c.moduli().iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join(" x ")
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<T>().map_err(|e| Failure::Input(format!("{p:?}: {e}"))))
        .collect()
}

fn group(cmd: GroupCmd) -> Out {
    match cmd {
        GroupCmd::Info { group, json } => {
            let a = FinAbGroup::parse(&group)?;
            let canon = canonical_decomposition(&a);
            let w2 = wedge_power(&a, 2)?;
            let w3 = wedge_power(&a, 3)?;
            let coh = cohomology_orders(&a);
            let census = order_census(&a);
            if json {
                print_json(&serde_json::json!({
                    "group": a,
                    "canonical": canon,
                    "order": a.order(),
                    "exponent": a.exponent(),
                    "census": census,
                    "wedge2": w2,
                    "wedge3": w3,
                    "cohomology": coh,
                }));
            } else {
                println!("canonical  {}", show(&a));
                println!("order      {}", a.order());
                println!("exponent   {}", a.exponent());
                let c: Vec<String> = census.iter().map(|(o, k)| format!("{o}:{k}")).collect();
                println!("census     {}", c.join(" "));
                println!("wedge2     {}", show(&w2));
                println!("wedge3     {}", show(&w3));
                println!("|H2|       {}", coh.h2_order);
                println!("H3         {}", show(&coh.h3));
                println!("|Quad|     {}", coh.quad_order);
            }
        }
        GroupCmd::Kunneth { g, l } => {
            let led = kunneth_check(&FinAbGroup::parse(&g)?, &FinAbGroup::parse(&l)?);
            print_json(&led);
            if !led.balanced {
                return Err(Failure::Checks);
            }
        }
        GroupCmd::Recursion { base, index } => {
            let led = twofun_recursion(&base.parse()?, index)?;
            print_json(&led);
            if !led.balanced {
                return Err(Failure::Checks);
            }
        }
        GroupCmd::Cup { rank } => print_json(&cup_square_kernel(rank)?),
    }
    Ok(())
}

fn factors(base: BaseArgs, json: bool) -> Out {
    let f = mext_core::filtration::mext_factors(&base.parse()?)?;
    if json {
        print_json(&f);
        return Ok(());
    }
    match f {
        Factors::SuperTannakian(r) => {
            println!("triv     {}", show(&r.triv));
            println!("pt/triv  {}", show(&r.pt_over_triv));
            println!("int/pt   {}", show(&r.int_over_pt));
            println!("top      {}", show(&r.top));
            println!("order    {}", r.total_order);
            println!("split    {}", r.split);
        }
        Factors::Tannakian(r) => {
            println!("H3       {}", show(&r.h3));
            println!("order    {}", r.order);
        }
    }
    Ok(())
}

fn build_trivial(base: &BaseCategory, q: &str, cross: Option<&str>) -> Result<MinExt, Failure> {
    let a = base.group();
    let r = a.rank();
    let mut diag: Vec<QZ> = parse_list(q)?;
    if diag.len() == 1 && r > 1 {
        diag = vec![diag[0]; r];
    }
    let cross: Vec<QZ> = match cross {
        Some(c) => parse_list(c)?,
        None => vec![QZ::ZERO; r * r.saturating_sub(1) / 2],
    };
    let form = QuadForm::new(a.clone(), diag, cross)?;
    Ok(MinExt::build_trivial(base, &form)?)
}

fn ext(cmd: ExtCmd) -> Out {
    match cmd {
        ExtCmd::BuildTrivial { base, q, cross } => {
            print_json(&build_trivial(&base.parse()?, &q, cross.as_deref())?);
        }
        ExtCmd::BuildMkzeta { n, k, zeta } => print_json(&build_m_k_zeta(n, k, zeta)?),
        ExtCmd::Product { a, b } => {
            let (a, b): (MinExt, MinExt) = (load(&a)?, load(&b)?);
            print_json(&a.product(&b)?);
        }
        ExtCmd::Reverse { m } => print_json(&load::<MinExt>(&m)?.reverse()),
        ExtCmd::Order { m, cap } => println!("{}", load::<MinExt>(&m)?.order_in_mext(cap)?),
        ExtCmd::Charge { m } => println!("{}/16", load::<MinExt>(&m)?.charge16()?),
        ExtCmd::Equiv { a, b } => {
            let (a, b): (MinExt, MinExt) = (load(&a)?, load(&b)?);
            if a.base() != b.base() {
                return Err(MextError::BaseMismatch.into());
            }
            println!("{}", a.is_equivalent(&b)?);
        }
    }
    Ok(())
}

fn cocycle(cmd: CocycleCmd) -> Out {
    match cmd {
        CocycleCmd::Standard {
            group,
            ty,
            indices,
            coeff,
        } => {
            let a = FinAbGroup::parse(&group)?;
            let ty: CocycleType = ty.parse()?;
            let idx: Vec<usize> = parse_list(&indices)?;
            print_json(&standard_cocycle(&a, ty, &idx, coeff)?);
        }
        CocycleCmd::Check { w } => {
            load::<Cocycle3>(&w)?.check_cocycle()?;
            println!("true");
        }
        CocycleCmd::Alternator { w } => print_json(&alternator(&load::<Cocycle3>(&w)?)?),
        CocycleCmd::Mu { w, x } => {
            let w: Cocycle3 = load(&w)?;
            let x = w.group().parse_elt(&x)?;
            print_json(&mu_from_omega(&w, &x)?.alt_form()?);
        }
    }
    Ok(())
}

fn run_verify(suite: &str, json: bool) -> Out {
    let suite: Suite = suite.parse()?;
    let checks = verify::run(suite);
    if json {
        print_json(&checks);
    } else {
        for c in &checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                println!("{mark} [{}] {}", c.suite, c.name);
            } else {
                println!("{mark} [{}] {} ({})", c.suite, c.name, c.detail);
            }
        }
    }
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Group(c) => group(c),
        Cmd::Factors { base, json } => factors(base, json),
        Cmd::Ext(c) => ext(c),
        Cmd::Cocycle(c) => cocycle(c),
        Cmd::Verify { suite, json } => run_verify(&suite, json),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks) => ExitCode::from(1),
    }
}
