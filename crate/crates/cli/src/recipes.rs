//! Fixed pipelines that recompute a published value and compare it with
//! the expected one.

use anyhow::Result;
use ramsey_mult::ap::{self, ZnColoring};
use ramsey_mult::blowup::{blowup_density_pair, cost, BlowupObjective, WeightVector};
use ramsey_mult::flags::{toy_certificate, verify_certificate};
use ramsey_mult::graphs::{is_isomorphic, named, Graph};
use ramsey_mult::rational::{format_sig, rat, to_f64};
use ramsey_mult::region::branch_crossings;
use ramsey_mult::search::{exhaustive_search, BlowupProblem, FiniteGroup, SearchProblem, SearchSpace};
use ramsey_mult::xorprod::mono_density_of_product;
use ramsey_mult::Rational;

use crate::input::fmt;

pub struct Check {
    pub computed: String,
    pub expected: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn exact(computed: Rational, expected: Rational, detail: impl Into<String>) -> Self {
        Self {
            ok: computed == expected,
            computed: fmt(&computed),
            expected: fmt(&expected),
            detail: detail.into(),
        }
    }
}

pub const RECIPES: &[(&str, &str)] = &[
    ("goodman", "K2 blow-up, s = t = 3: x + y = 1/4"),
    ("c34-schlafli", "Schlafli graph, s = 3, t = 4: x + y = 689/6561"),
    ("c35-schlafli-complement", "Schlafli complement, s = 5, t = 3: cost 24011/531441"),
    ("g45-ramsey13", "Cayley graph C_R(3,5), independent 4-sets: 29/2197"),
    ("g55-ramsey13", "Cayley graph C_R(3,5), independent 5-sets: 61/28561"),
    ("g45-cayley-z13", "exhaustive search over Cayley graphs of Z13 finds 29/2197"),
    ("flag-toy-c3", "three-vertex flag certificate proves 1/4"),
    ("thomason-c5", "K3 x M x M x M product, s = t = 5: below 0.001730"),
    ("ap-z44", "Z44 partial colouring, k = 5: bound 1/48"),
    ("ap-z226", "Z226 partial colouring, k = 6: bound 1/228"),
    ("ap-z11", "Z11 with one uncoloured cell, k = 4: bound 1/12"),
    ("region-c33", "upper curve for s = t = 3 switches branch near 0.278"),
];

fn uniform_pair(g: &Graph, s: usize, t: usize) -> Result<(Rational, Rational)> {
    Ok(blowup_density_pair(g, s, t, &WeightVector::uniform(g.order()))?)
}

fn ap_bound(text: &str, n: usize, k: usize, expected: Rational) -> Result<Check> {
    let c = ZnColoring::parse_n(text, n)?;
    let r = ap::verify_partial(&c, k)?;
    let detail = format!(
        "cross condition {}, m_k(A) = {}",
        if r.cross_condition() { "holds" } else { "fails" },
        fmt(&r.min_fraction)
    );
    Ok(match r.bound() {
        Some(b) => Check::exact(b, expected, detail),
        None => Check {
            computed: "none".into(),
            expected: fmt(&expected),
            ok: false,
            detail,
        },
    })
}

pub fn run(name: &str) -> Result<Check> {
    Ok(match name {
        "goodman" => {
            let (x, y) = uniform_pair(&Graph::complete(2), 3, 3)?;
            Check::exact(&x + &y, rat(1, 4), format!("x = {}, y = {}", fmt(&x), fmt(&y)))
        }
        "c34-schlafli" => {
            let (x, y) = uniform_pair(&named::schlafli(), 3, 4)?;
            Check::exact(&x + &y, rat(689, 6561), format!("x = {}, y = {}", fmt(&x), fmt(&y)))
        }
        "c35-schlafli-complement" => {
            let g = named::schlafli_complement();
            let c = cost(&g, &BlowupObjective::new(5, 3), &WeightVector::uniform(27))?;
            Check::exact(c, rat(24011, 531441), "lambda = 1")
        }
        "g45-ramsey13" => {
            let (x, y) = uniform_pair(&named::ramsey_13(), 4, 5)?;
            Check::exact(x, rat(29, 2197), format!("K5 density {}", fmt(&y)))
        }
        "g55-ramsey13" => {
            let (x, y) = uniform_pair(&named::ramsey_13(), 5, 5)?;
            Check::exact(x, rat(61, 28561), format!("K5 density {}", fmt(&y)))
        }
        "g45-cayley-z13" => {
            let obj = BlowupObjective::new(4, 5).with_lambda(rat(1_000_000, 1));
            let p = BlowupProblem::new(SearchSpace::cayley(FiniteGroup::cyclic(13)?), obj)?;
            let (state, score) = exhaustive_search(&p)?;
            let iso = is_isomorphic(&p.space.decode(&state), &named::ramsey_13());
            let mut c = Check::exact(p.to_rational(score), rat(29, 2197), format!("optimum isomorphic to C_R(3,5): {iso}"));
            c.ok &= iso;
            c
        }
        "flag-toy-c3" => {
            let r = verify_certificate(&toy_certificate())?;
            let sharp = r.sharp().len();
            let mut c = Check::exact(r.bound, rat(1, 4), format!("{sharp} of 4 graphs sharp"));
            c.ok &= sharp == 4;
            c
        }
        "thomason-c5" => {
            let m = Graph::perfect_matching(4);
            let v = mono_density_of_product(&[Graph::complete(3), m.clone(), m.clone(), m], 5, 5)?;
            let f = to_f64(&v);
            Check {
                computed: format!("{} ~ {}", fmt(&v), format_sig(f, 7)),
                expected: "< 0.001730".into(),
                ok: f < 0.001730 + 1e-6,
                detail: "exact value of the 192-vertex product".into(),
            }
        }
        "ap-z44" => ap_bound(ap::Z44_K5, 44, 5, rat(1, 48))?,
        "ap-z226" => ap_bound(ap::Z226_K6, 226, 6, rat(1, 228))?,
        "ap-z11" => {
            let (min, _) = ap::exhaustive_min(11, 4)?;
            let (c, r) = ap::exhaustive_partial(11, 1, 4)?;
            let detail = format!("m_4(Z11) = {}, partial colouring {c}", fmt(&min));
            match r.bound() {
                Some(b) => {
                    let mut check = Check::exact(b, rat(1, 12), detail);
                    check.ok &= min == rat(1, 11);
                    check
                }
                None => Check {
                    computed: "none".into(),
                    expected: "1/12".into(),
                    ok: false,
                    detail,
                },
            }
        }
        "region-c33" => {
            let xs = branch_crossings(3, 3, 1000)?;
            let (x, y) = xs.first().copied().unwrap_or((f64::NAN, f64::NAN));
            Check {
                computed: format!("({}, {})", format_sig(x, 6), format_sig(y, 6)),
                expected: "(0.278, 0.278) +- 0.001".into(),
                ok: (x - 0.278).abs() < 1e-3 && (y - 0.278).abs() < 1e-3,
                detail: format!("{} crossing(s)", xs.len()),
            }
        }
        other => {
            let names: Vec<&str> = RECIPES.iter().map(|r| r.0).collect();
            anyhow::bail!("unknown recipe {other:?}; known recipes: {}", names.join(", "))
        }
    })
}
