//! Machine-checkable certificates: which rule fired, the certified bound,
//! and every exact intermediate value needed to re-derive the verdict.
//!
//! All numeric evidence is serialized as exact decimal strings; rationals
//! use `numerator/denominator` in lowest terms. The JSON schema ships in
//! `docs/report.schema.json`.

use serde::{Deserialize, Serialize};

use crate::divisors::DivisorClass;

/// Identifier of the certification rule that fired. The dotted suffix
/// names the sub-case of the rule, e.g. `thm0Explicit.ii` or
/// `coro3main.vii`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Apollonius-circle membership with the class ratio itself (case i)
    /// or its square root plus a rational-root exclusion (case ii).
    Thm0Explicit { unitary: bool, sqrt_case: bool },
    /// Unit class ratio plus a certified half plane (case iii).
    Thm0HalfPlane { unitary: bool },
    /// Modulus-bound comparisons; `case` is 1, 2 or 3 for i/ii/iii.
    Thm1 { unitary: bool, case: u8 },
    /// Sign/magnitude refinements of the modulus-bound route; 1..=7.
    Remark1 { case: u8 },
    Coro1Main,
    Coro1MainPrime,
    Coro1MainDoublePrime,
    Coro2,
    EnestromKakeya,
    EnestromKakeya2,
    Littlewood,
    Littlewood2,
    /// Unitary prime-pattern route; `case` is 1..=8 for i..viii.
    Coro3Main { case: u8 },
    Thm5,
    Thm7,
    Coro6,
}

fn roman(case: u8) -> &'static str {
    match case {
        1 => "i",
        2 => "ii",
        3 => "iii",
        4 => "iv",
        5 => "v",
        6 => "vi",
        7 => "vii",
        8 => "viii",
        _ => "?",
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Thm0Explicit { unitary, sqrt_case } => write!(
                f,
                "thm0{}Explicit.{}",
                if *unitary { "unitary" } else { "" },
                if *sqrt_case { "ii" } else { "i" }
            ),
            Route::Thm0HalfPlane { unitary } => {
                write!(f, "thm0{}.iii", if *unitary { "unitary" } else { "" })
            }
            Route::Thm1 { unitary, case } => {
                write!(f, "{}.{}", if *unitary { "thm3" } else { "thm1" }, roman(*case))
            }
            Route::Remark1 { case } => write!(f, "remark1.case{case}"),
            Route::Coro1Main => write!(f, "coro1main"),
            Route::Coro1MainPrime => write!(f, "coro1main'"),
            Route::Coro1MainDoublePrime => write!(f, "coro1main''"),
            Route::Coro2 => write!(f, "coro2"),
            Route::EnestromKakeya => write!(f, "EK"),
            Route::EnestromKakeya2 => write!(f, "EK2"),
            Route::Littlewood => write!(f, "LW"),
            Route::Littlewood2 => write!(f, "LW2"),
            Route::Coro3Main { case } => write!(f, "coro3main.{}", roman(*case)),
            Route::Thm5 => write!(f, "thm5"),
            Route::Thm7 => write!(f, "thm7"),
            Route::Coro6 => write!(f, "coro6"),
        }
    }
}

impl std::str::FromStr for Route {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let from_roman = |r: &str| -> Option<u8> {
            (1..=8u8).find(|&c| roman(c) == r)
        };
        let r = match s {
            "thm0Explicit.i" => Route::Thm0Explicit { unitary: false, sqrt_case: false },
            "thm0Explicit.ii" => Route::Thm0Explicit { unitary: false, sqrt_case: true },
            "thm0unitaryExplicit.i" => Route::Thm0Explicit { unitary: true, sqrt_case: false },
            "thm0unitaryExplicit.ii" => Route::Thm0Explicit { unitary: true, sqrt_case: true },
            "thm0.iii" => Route::Thm0HalfPlane { unitary: false },
            "thm0unitary.iii" => Route::Thm0HalfPlane { unitary: true },
            "coro1main" => Route::Coro1Main,
            "coro1main'" => Route::Coro1MainPrime,
            "coro1main''" => Route::Coro1MainDoublePrime,
            "coro2" => Route::Coro2,
            "EK" => Route::EnestromKakeya,
            "EK2" => Route::EnestromKakeya2,
            "LW" => Route::Littlewood,
            "LW2" => Route::Littlewood2,
            "thm5" => Route::Thm5,
            "thm7" => Route::Thm7,
            "coro6" => Route::Coro6,
            other => {
                if let Some(rest) = other.strip_prefix("thm1.") {
                    Route::Thm1 {
                        unitary: false,
                        case: from_roman(rest).ok_or_else(|| format!("bad route '{other}'"))?,
                    }
                } else if let Some(rest) = other.strip_prefix("thm3.") {
                    Route::Thm1 {
                        unitary: true,
                        case: from_roman(rest).ok_or_else(|| format!("bad route '{other}'"))?,
                    }
                } else if let Some(rest) = other.strip_prefix("remark1.case") {
                    Route::Remark1 {
                        case: rest.parse().map_err(|_| format!("bad route '{other}'"))?,
                    }
                } else if let Some(rest) = other.strip_prefix("coro3main.") {
                    Route::Coro3Main {
                        case: from_roman(rest).ok_or_else(|| format!("bad route '{other}'"))?,
                    }
                } else {
                    return Err(format!("unknown route '{s}'"));
                }
            }
        };
        Ok(r)
    }
}

impl Serialize for Route {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Route {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One hypothesis check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precondition {
    pub name: String,
    pub passed: bool,
}

/// Prime-power shape parameters backing a corollary route.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEvidence {
    pub shape: String,
    pub p: String,
    pub r: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    pub k1: u32,
    pub k2: u32,
}

/// Exact intermediate values; integers as decimal strings, rationals as
/// `numerator/denominator`. Unused fields are omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fa: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fb: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dfa: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dfb: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fa_factorization: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fb_factorization: Option<String>,
    /// The class ratio q_k for the k under test.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    /// `(d1, d2)` attaining q_k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_witness: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_bound_method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_bound_strict: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle_center: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle_radius_sq: Option<String>,
    /// Rational lower bound on sqrt(q_k) used for reporting clearances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_q_lower: Option<String>,
    /// Rational upper bound on sqrt(q_k) used in modulus comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_q_upper: Option<String>,
    /// Lower bound on `R - |C|` for the sqrt-ratio circle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clearance_lower: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternEvidence>,
    // Bivariate evidence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_a_poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_b_poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_value_a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_value_b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_k: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_threshold: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kth_root: Option<String>,
}

/// Evidence that a polynomial is the product of at most `certified_k`
/// irreducible factors, or the reasons no rule fired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    /// Canonical text of the polynomial under test.
    pub poly: String,
    /// Present iff some route certified; every listed precondition of
    /// that route passed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified_k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<Route>,
    pub divisor_class: DivisorClass,
    pub evidence: Evidence,
    pub preconditions: Vec<Precondition>,
    /// Rational roots discovered at scanned points with f(a) = 0; those
    /// points are skipped and reported here instead.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rational_roots: Vec<String>,
}

impl CriterionReport {
    pub fn not_certified(poly: String, class: DivisorClass) -> Self {
        CriterionReport {
            poly,
            certified_k: None,
            route: None,
            divisor_class: class,
            evidence: Evidence::default(),
            preconditions: Vec::new(),
            rational_roots: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool) -> bool {
        self.preconditions.push(Precondition { name: name.to_string(), passed });
        passed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Plain-text rendering for terminal output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("polynomial: {}\n", self.poly));
        match (self.certified_k, &self.route) {
            (Some(k), Some(route)) => {
                out.push_str(&format!(
                    "certified: product of at most {k} irreducible factor{} (route {route}, class {})\n",
                    if k == 1 { "" } else { "s" },
                    self.divisor_class
                ));
            }
            _ => out.push_str("certified: no\n"),
        }
        let e = &self.evidence;
        let mut kv: Vec<(&str, String)> = Vec::new();
        let mut push = |k: &'static str, v: &Option<String>| {
            if let Some(v) = v {
                kv.push((k, v.clone()));
            }
        };
        push("a", &e.a);
        push("b", &e.b);
        push("f(a)", &e.fa);
        push("f(b)", &e.fb);
        push("f'(a)", &e.dfa);
        push("f'(b)", &e.dfb);
        push("|f(a)| factors", &e.fa_factorization);
        push("|f(b)| factors", &e.fb_factorization);
        push("q", &e.q);
        push("root bound", &e.root_bound);
        push("circle center", &e.circle_center);
        push("circle radius^2", &e.circle_radius_sq);
        push("sqrt(q) lower", &e.sqrt_q_lower);
        push("sqrt(q) upper", &e.sqrt_q_upper);
        push("clearance lower", &e.clearance_lower);
        push("f(X,a(X))", &e.value_a_poly);
        push("f(X,b(X))", &e.value_b_poly);
        push("delta_k", &e.delta_k);
        push("degree threshold", &e.degree_threshold);
        push("k-th root", &e.kth_root);
        if let Some(w) = &e.q_witness {
            kv.push(("q witness (d1, d2)", format!("({}, {})", w[0], w[1])));
        }
        if let Some(q) = e.q_degree {
            kv.push(("q (degree form)", q.to_string()));
        }
        if let Some(p) = &e.pattern {
            let mut s = format!("shape {} with p={}, r={}, k1={}, k2={}", p.shape, p.p, p.r, p.k1, p.k2);
            if let Some(q) = &p.q {
                s.push_str(&format!(", q={q}"));
            }
            if let Some(j) = p.j {
                s.push_str(&format!(", j={j}"));
            }
            kv.push(("pattern", s));
        }
        for (k, v) in kv {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        if !self.rational_roots.is_empty() {
            out.push_str(&format!("rational roots found: {}\n", self.rational_roots.join(", ")));
        }
        if !self.preconditions.is_empty() {
            out.push_str("checks:\n");
            for p in &self.preconditions {
                out.push_str(&format!("  [{}] {}\n", if p.passed { "pass" } else { "fail" }, p.name));
            }
        }
        out
    }
}
