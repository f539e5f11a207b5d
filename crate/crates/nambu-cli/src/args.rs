use clap::{Args, Parser, Subcommand};

/// Exact symbolic calculus for Nambu structures.
#[derive(Debug, Parser)]
#[command(name = "nambu", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Chart: a dimension (`--ctx 3` gives x1..x3) or comma-separated names.
    #[arg(long, global = true)]
    pub ctx: Option<String>,

    /// Emit JSON instead of canonical text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Forward components (comma-separated polynomials), one use per step.
    #[arg(long = "map-forward", required = true)]
    pub forward: Vec<String>,

    /// Inverse components (comma-separated polynomials), one use per step.
    #[arg(long = "map-inverse", required = true)]
    pub inverse: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schouten bracket of two multivector fields.
    Bracket { a: String, b: String },

    /// Exterior product of two values of the same kind.
    Wedge { a: String, b: String },

    /// Contraction of a form into a multivector field.
    Contract { alpha: String, p: String },

    /// Lie derivative of a multivector, form, or function along a vector field.
    Lie { x: String, t: String },

    /// Exterior derivative.
    D { omega: String },

    /// Volume duality: multivectors to forms and back.
    Dual { value: String },

    /// Pushforward along a polynomial coordinate change.
    Push {
        p: String,
        #[command(flatten)]
        map: MapArgs,
    },

    /// Integrability test.
    #[command(name = "is-nambu")]
    IsNambu { p: String },

    /// Singular locus report: coefficient generators, their gcd, codimension flag.
    Singular { p: String },

    /// Coefficient gcd and primitive part.
    Primitive { p: String },

    /// Tangency test for a vector field.
    Tangent { x: String, l: String },

    /// Conformal-invariant-tangency test; the factor is reported with --json.
    Cit { x: String, l: String },

    /// Hamiltonian contraction by one or more functions.
    Hamiltonian {
        l: String,
        /// Hamiltonian function (repeat for higher contractions).
        #[arg(long = "f", required = true)]
        fs: Vec<String>,
    },

    /// Conformal-preservation membership test for a square-free function.
    Mu { f: String, l: String },

    /// Associated-structure extraction from a factorization of the coefficient gcd.
    Associated {
        l: String,
        /// Square-free factor of the gcd, `poly` or `poly:multiplicity`.
        #[arg(long = "factor")]
        factors: Vec<String>,
    },

    /// First-integral test.
    #[command(name = "first-integral")]
    FirstIntegral { f: String, l: String },

    /// Reduction by the regular blade spanning the first k axes.
    Reduce { l: String, k: usize },

    /// Low-regime commutativity of two structures.
    Commute { l1: String, l2: String },

    /// Pairwise commutativity of a family.
    #[command(name = "commute-family")]
    CommuteFamily {
        #[arg(required = true)]
        ls: Vec<String>,
    },

    /// High-regime commutativity, verified through a witness chain.
    #[command(name = "commute-high")]
    CommuteHigh {
        l1: String,
        l2: String,
        /// Common Hamiltonian field, one use per chain step.
        #[arg(long = "witness-x", required = true)]
        witness_x: Vec<String>,
        #[command(flatten)]
        map: MapArgs,
        /// Designated point where the chain fields must not vanish.
        #[arg(long)]
        point: String,
    },

    /// Degenerate commutativity, sampled at rational points.
    #[command(name = "commute-degenerate")]
    CommuteDegenerate {
        l1: String,
        l2: String,
        /// Stated generic intersection dimension.
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        map: MapArgs,
        /// Sample point (repeatable).
        #[arg(long = "point", required = true)]
        points: Vec<String>,
    },

    /// Verification of a claimed simultaneous normal form.
    #[command(name = "normal-form")]
    NormalForm {
        l1: String,
        l2: String,
        #[command(flatten)]
        map: MapArgs,
    },

    /// Structure induced by a Lie algebra action.
    #[command(name = "lie-action")]
    LieAction {
        /// Image vector field of the a-th generator (repeat, in order).
        #[arg(long = "image", required = true)]
        images: Vec<String>,
        /// Structure constant `a,b,c:value` for [e_a, e_b] = sum_c value e_c;
        /// the antisymmetric counterpart is filled in automatically.
        #[arg(long = "sc")]
        structure_constants: Vec<String>,
        /// Wedge coefficient `a1,...,aq:value` (repeat).
        #[arg(long = "xi", required = true)]
        xi: Vec<String>,
    },

    /// Integrable-presentation test.
    Integrable {
        /// Structure in the presentation (repeat).
        #[arg(long = "structure", required = true)]
        structures: Vec<String>,
        /// First integral (repeat).
        #[arg(long = "integral")]
        integrals: Vec<String>,
    },

    /// Parse and reprint in canonical form.
    Fmt {
        expr: String,
        /// Treat the input as the JSON interchange format.
        #[arg(long = "from-json")]
        from_json: bool,
    },
}
