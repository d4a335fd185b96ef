//! Values and operations of the two evaluation contexts: a label group
//! (tables of `V(G)` and bisections of `𝒱₂ × G`) or an action (twist tables
//! and bisections of `S𝒱₂ ⋊ G`).

use cg_core::cantor::CantorPoint;
use cg_core::groupoid::{
    format_brick_set, format_word_set, parse_brick_set, parse_word_set, Bisection, TwistedBisection,
};
use cg_core::groups::{Action, Group, TrivialGroup};
use cg_core::labelled::{CenterResult, GTable, Order};
use cg_core::twisted::{format_cube_point, parse_cube_point, TwistTable};
use cg_core::{Error, Result};
use serde_json::{json, Value as Json};

/// A rendered value: canonical text plus its JSON payload.
pub struct Shown {
    pub text: String,
    pub json: Json,
}

/// An argument to a raw-text constructor: a bound value or the text itself.
pub enum Arg<'a, V> {
    Bound(&'a V),
    Text(&'a str),
}

pub trait World {
    type Val: Clone;

    fn context(&self) -> String;
    fn literal(&self, kind: crate::expr::LitKind, text: &str) -> Result<Self::Val>;
    fn apply(&self, func: &str, v: Self::Val) -> Result<Self::Val>;
    fn build(&self, func: &str, arg: Arg<'_, Self::Val>) -> Result<Self::Val>;
    fn mul(&self, a: &Self::Val, b: &Self::Val) -> Result<Self::Val>;
    fn pow(&self, a: &Self::Val, k: i64) -> Result<Self::Val>;
    fn show(&self, v: &Self::Val) -> Shown;

    fn act(&self, v: &Self::Val, point: &str) -> Result<Shown>;
    fn order(&self, v: &Self::Val, max: usize) -> Result<Shown>;
    fn center(&self, v: &Self::Val) -> Result<Shown>;
    fn witness(&self, u: &str, v: &str) -> Result<Shown>;
}

fn mismatch(op: &str, a: &str, b: &str) -> Error {
    Error::ActionMismatch(format!("cannot apply {op} to {a} and {b}"))
}

fn one_arg(op: &str, a: &str) -> Error {
    Error::ActionMismatch(format!("cannot apply {op} to {a}"))
}

fn parse_count(text: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("expected a count, found {:?}", text.trim())))
}

fn order_shown(o: Order) -> Shown {
    match o {
        Order::Exact(k) => Shown {
            text: k.to_string(),
            json: json!({ "order": k }),
        },
        Order::Exceeds(m) => Shown {
            text: format!("> {m}"),
            json: json!({ "order": null, "exceeds": m }),
        },
    }
}

/// Repeated products until the identity, for values without a dedicated
/// order routine.
fn order_by<T: Clone>(x: &T, max: usize, is_id: impl Fn(&T) -> bool, mul: impl Fn(&T, &T) -> T) -> Order {
    let mut acc = x.clone();
    for k in 1..=max {
        if is_id(&acc) {
            return Order::Exact(k);
        }
        acc = mul(&acc, x);
    }
    Order::Exceeds(max)
}

fn pow_by<T: Clone>(x: &T, k: i64, unit: T, inv: impl Fn(&T) -> T, mul: impl Fn(&T, &T) -> Result<T>) -> Result<T> {
    let base = if k < 0 { inv(x) } else { x.clone() };
    let mut acc = unit;
    for _ in 0..k.unsigned_abs() {
        acc = mul(&acc, &base)?;
    }
    Ok(acc)
}

// ------------------------------------------------------------ label groups

pub struct OracleWorld<G: Group> {
    pub group: G,
}

#[derive(Clone)]
pub enum OVal<G: Group> {
    Table(GTable<G>),
    VTable(GTable<TrivialGroup>),
    Bis(Bisection<G>),
    VBis(Bisection<TrivialGroup>),
    Elem(G::Elem),
}

impl<G: Group> OVal<G> {
    fn kind(&self) -> &'static str {
        match self {
            OVal::Table(_) => "table",
            OVal::VTable(_) => "table of V",
            OVal::Bis(_) => "bisection",
            OVal::VBis(_) => "bisection of V2",
            OVal::Elem(_) => "group element",
        }
    }
}

fn bis_pow<H: Group>(b: &Bisection<H>, k: i64) -> Bisection<H> {
    let unit = Bisection::unit(b.group().clone(), &b.source());
    pow_by(b, k, unit, Bisection::invert, |x, y| Ok(x.compose(y))).expect("compose is total")
}

fn plain_act<H: Group>(b: &Bisection<H>, x: &CantorPoint) -> Result<(CantorPoint, H::Elem)> {
    b.parts()
        .iter()
        .find(|p| x.starts_with(&p.domain))
        .map(|p| (p.act(x).expect("prefix checked"), p.label.clone()))
        .ok_or_else(|| Error::ActionMismatch(format!("{x} is outside the source")))
}

fn point_with_label<H: Group>(group: &H, y: &CantorPoint, g: &H::Elem) -> Shown {
    let label = group.format_elem(g);
    Shown {
        text: if group.is_identity(g) {
            y.to_string()
        } else {
            format!("{y} : {label}")
        },
        json: json!({ "point": y.to_string(), "label": label }),
    }
}

fn center_shown<H: Group>(t: &GTable<H>) -> Shown {
    let group = t.group();
    match t.center_test() {
        CenterResult::Central(z) => Shown {
            text: format!("central: iotaE({})", group.format_elem(&z)),
            json: json!({ "status": "central", "z": group.format_elem(&z) }),
        },
        CenterResult::NotCentral(w) => Shown {
            text: format!("not central; witness {w}"),
            json: json!({ "status": "not_central", "witness": w.to_string(), "witness_json": w.to_json() }),
        },
        CenterResult::Unknown(z) => Shown {
            text: format!("unknown: centrality of {} is undecided", group.format_elem(&z)),
            json: json!({ "status": "unknown", "z": group.format_elem(&z) }),
        },
    }
}

impl<G: Group> World for OracleWorld<G> {
    type Val = OVal<G>;

    fn context(&self) -> String {
        format!("oracle:{}", self.group.name())
    }

    fn literal(&self, kind: crate::expr::LitKind, text: &str) -> Result<OVal<G>> {
        use crate::expr::LitKind::*;
        match kind {
            Table => Ok(OVal::Table(GTable::parse(self.group.clone(), text)?)),
            Bisection => Ok(OVal::Bis(cg_core::groupoid::Bisection::parse(self.group.clone(), text)?)),
            Twist => Err(Error::ActionMismatch(
                "twist tables need an action; pass --action".into(),
            )),
        }
    }

    fn apply(&self, func: &str, v: OVal<G>) -> Result<OVal<G>> {
        match (func, v) {
            ("pi", OVal::Table(t)) => Ok(OVal::VTable(t.pi_forget())),
            ("pi", OVal::VTable(t)) => Ok(OVal::VTable(t)),
            ("J", OVal::Table(t)) => Ok(OVal::Bis(Bisection::from_gtable(&t))),
            ("J", OVal::VTable(t)) => Ok(OVal::VBis(Bisection::from_gtable(&t))),
            ("I", OVal::Bis(b)) => Ok(OVal::Table(b.to_gtable()?)),
            ("I", OVal::VBis(b)) => Ok(OVal::VTable(b.to_gtable()?)),
            (f, v) => Err(one_arg(f, v.kind())),
        }
    }

    fn build(&self, func: &str, arg: Arg<'_, OVal<G>>) -> Result<OVal<G>> {
        let g = &self.group;
        let elem = |arg: Arg<'_, OVal<G>>| match arg {
            Arg::Bound(OVal::Elem(x)) => Ok(x.clone()),
            Arg::Bound(v) => Err(one_arg(func, v.kind())),
            Arg::Text(t) => g.parse_elem(t.trim()),
        };
        match func {
            "elem" => Ok(OVal::Elem(elem(arg)?)),
            "iota0" => Ok(OVal::Table(GTable::iota0(g.clone(), elem(arg)?))),
            "iotaE" => Ok(OVal::Table(GTable::iota_empty(g.clone(), elem(arg)?))),
            "torsion" => match arg {
                Arg::Text(t) => Ok(OVal::Table(GTable::torsion_generator(g.clone(), parse_count(t)?)?)),
                Arg::Bound(v) => Err(one_arg(func, v.kind())),
            },
            _ => Err(Error::ActionMismatch(format!("{func} needs an action; pass --action"))),
        }
    }

    fn mul(&self, a: &OVal<G>, b: &OVal<G>) -> Result<OVal<G>> {
        match (a, b) {
            (OVal::Table(x), OVal::Table(y)) => Ok(OVal::Table(x.try_mul(y)?)),
            (OVal::VTable(x), OVal::VTable(y)) => Ok(OVal::VTable(x.try_mul(y)?)),
            (OVal::Bis(x), OVal::Bis(y)) => Ok(OVal::Bis(x.compose(y))),
            (OVal::VBis(x), OVal::VBis(y)) => Ok(OVal::VBis(x.compose(y))),
            (OVal::Elem(x), OVal::Elem(y)) => Ok(OVal::Elem(self.group.mul(x, y))),
            (a, b) => Err(mismatch("*", a.kind(), b.kind())),
        }
    }

    fn pow(&self, a: &OVal<G>, k: i64) -> Result<OVal<G>> {
        Ok(match a {
            OVal::Table(t) => OVal::Table(t.pow(k)),
            OVal::VTable(t) => OVal::VTable(t.pow(k)),
            OVal::Bis(b) => OVal::Bis(bis_pow(b, k)),
            OVal::VBis(b) => OVal::VBis(bis_pow(b, k)),
            OVal::Elem(x) => OVal::Elem(self.group.pow(x, k)),
        })
    }

    fn show(&self, v: &OVal<G>) -> Shown {
        let g = &self.group;
        match v {
            OVal::Table(t) => Shown {
                text: t.to_string(),
                json: json!({ "kind": "gtable", "group": g.name(), "text": t.to_string(), "value": t.to_json() }),
            },
            OVal::VTable(t) => Shown {
                text: t.to_string(),
                json: json!({ "kind": "gtable", "group": "trivial", "text": t.to_string(), "value": t.to_json() }),
            },
            OVal::Bis(b) => Shown {
                text: b.to_string(),
                json: json!({ "kind": "bisection", "full": b.is_full(), "text": b.to_string(), "value": b.to_json() }),
            },
            OVal::VBis(b) => Shown {
                text: b.to_string(),
                json: json!({ "kind": "bisection", "full": b.is_full(), "text": b.to_string(), "value": b.to_json() }),
            },
            OVal::Elem(x) => Shown {
                text: g.format_elem(x),
                json: json!({ "kind": "element", "group": g.name(), "text": g.format_elem(x) }),
            },
        }
    }

    fn act(&self, v: &OVal<G>, point: &str) -> Result<Shown> {
        let x: CantorPoint = point.parse()?;
        match v {
            OVal::Table(t) => {
                let (y, g) = t.act(&x);
                Ok(point_with_label(&self.group, &y, &g))
            }
            OVal::VTable(t) => Ok(point_with_label(&TrivialGroup, &t.act(&x).0, &())),
            OVal::Bis(b) => {
                let (y, g) = plain_act(b, &x)?;
                Ok(point_with_label(&self.group, &y, &g))
            }
            OVal::VBis(b) => Ok(point_with_label(&TrivialGroup, &plain_act(b, &x)?.0, &())),
            OVal::Elem(_) => Err(one_arg("act", v.kind())),
        }
    }

    fn order(&self, v: &OVal<G>, max: usize) -> Result<Shown> {
        let o = match v {
            OVal::Table(t) => t.order(max),
            OVal::VTable(t) => t.order(max),
            OVal::Bis(b) => b.to_gtable()?.order(max),
            OVal::VBis(b) => b.to_gtable()?.order(max),
            OVal::Elem(x) => order_by(x, max, |a| self.group.is_identity(a), |a, b| self.group.mul(a, b)),
        };
        Ok(order_shown(o))
    }

    fn center(&self, v: &OVal<G>) -> Result<Shown> {
        match v {
            OVal::Table(t) => Ok(center_shown(t)),
            OVal::VTable(t) => Ok(center_shown(t)),
            OVal::Bis(b) => Ok(center_shown(&b.to_gtable()?)),
            OVal::VBis(b) => Ok(center_shown(&b.to_gtable()?)),
            OVal::Elem(_) => Err(one_arg("center", v.kind())),
        }
    }

    fn witness(&self, u: &str, v: &str) -> Result<Shown> {
        let (u, v) = (parse_word_set(u)?, parse_word_set(v)?);
        let s = Bisection::min_witness(self.group.clone(), &u, &v)?;
        let (src, rng) = (s.source(), s.range());
        Ok(Shown {
            text: s.to_string(),
            json: json!({
                "bisection": s.to_json(),
                "text": s.to_string(),
                "source": format_word_set(&src),
                "range": format_word_set(&rng),
                "source_equals_u": src.set_eq(&u),
                "range_within_v": rng.is_subset(&v),
            }),
        })
    }
}

// ----------------------------------------------------------------- actions

pub struct ActionWorld<A: Action> {
    pub action: A,
}

pub enum AVal<A: Action> {
    Twist(TwistTable<A>),
    Bis(TwistedBisection<A>),
    Elem(<A::G as Group>::Elem),
}

impl<A: Action> Clone for AVal<A> {
    fn clone(&self) -> Self {
        match self {
            AVal::Twist(t) => AVal::Twist(t.clone()),
            AVal::Bis(b) => AVal::Bis(b.clone()),
            AVal::Elem(x) => AVal::Elem(x.clone()),
        }
    }
}

impl<A: Action> AVal<A> {
    fn kind(&self) -> &'static str {
        match self {
            AVal::Twist(_) => "twist table",
            AVal::Bis(_) => "twisted bisection",
            AVal::Elem(_) => "group element",
        }
    }
}

impl<A: Action> World for ActionWorld<A> {
    type Val = AVal<A>;

    fn context(&self) -> String {
        format!("action:{}", self.action.name())
    }

    fn literal(&self, kind: crate::expr::LitKind, text: &str) -> Result<AVal<A>> {
        use crate::expr::LitKind::*;
        match kind {
            Twist => Ok(AVal::Twist(TwistTable::parse(self.action.clone(), text)?)),
            Bisection => Ok(AVal::Bis(TwistedBisection::parse(self.action.clone(), text)?)),
            Table => Err(Error::ActionMismatch(
                "labelled tables need an oracle; pass --oracle".into(),
            )),
        }
    }

    fn apply(&self, func: &str, v: AVal<A>) -> Result<AVal<A>> {
        match (func, v) {
            ("J", AVal::Twist(t)) => Ok(AVal::Bis(TwistedBisection::from_twist_table(&t))),
            ("I", AVal::Bis(b)) => Ok(AVal::Twist(b.to_twist_table()?)),
            (f, v) => Err(one_arg(f, v.kind())),
        }
    }

    fn build(&self, func: &str, arg: Arg<'_, AVal<A>>) -> Result<AVal<A>> {
        let g = self.action.group();
        let elem = match arg {
            Arg::Bound(AVal::Elem(x)) => x.clone(),
            Arg::Bound(v) => return Err(one_arg(func, v.kind())),
            Arg::Text(t) => g.parse_elem(t.trim())?,
        };
        match func {
            "elem" => Ok(AVal::Elem(elem)),
            "tau" => Ok(AVal::Twist(TwistTable::global_twist(self.action.clone(), elem))),
            _ => Err(Error::ActionMismatch(format!("{func} needs an oracle; pass --oracle"))),
        }
    }

    fn mul(&self, a: &AVal<A>, b: &AVal<A>) -> Result<AVal<A>> {
        match (a, b) {
            (AVal::Twist(x), AVal::Twist(y)) => Ok(AVal::Twist(x.try_mul(y)?)),
            (AVal::Bis(x), AVal::Bis(y)) => Ok(AVal::Bis(x.compose(y))),
            (AVal::Elem(x), AVal::Elem(y)) => Ok(AVal::Elem(self.action.group().mul(x, y))),
            (a, b) => Err(mismatch("*", a.kind(), b.kind())),
        }
    }

    fn pow(&self, a: &AVal<A>, k: i64) -> Result<AVal<A>> {
        Ok(match a {
            AVal::Twist(t) => AVal::Twist(t.pow(k)),
            AVal::Bis(b) => {
                let unit = TwistedBisection::unit(self.action.clone(), &b.source());
                AVal::Bis(pow_by(b, k, unit, TwistedBisection::invert, |x, y| Ok(x.compose(y)))?)
            }
            AVal::Elem(x) => AVal::Elem(self.action.group().pow(x, k)),
        })
    }

    fn show(&self, v: &AVal<A>) -> Shown {
        let a = &self.action;
        match v {
            AVal::Twist(t) => Shown {
                text: t.to_string(),
                json: json!({ "kind": "twist_table", "text": t.to_string(), "value": t.to_json() }),
            },
            AVal::Bis(b) => Shown {
                text: b.to_string(),
                json: json!({ "kind": "twisted_bisection", "full": b.is_full(), "text": b.to_string(), "value": b.to_json() }),
            },
            AVal::Elem(x) => Shown {
                text: a.group().format_elem(x),
                json: json!({ "kind": "element", "group": a.group().name(), "text": a.group().format_elem(x) }),
            },
        }
    }

    fn act(&self, v: &AVal<A>, point: &str) -> Result<Shown> {
        let a = &self.action;
        let k = parse_cube_point(a, point)?;
        let out = match v {
            AVal::Twist(t) => t.act(&k),
            AVal::Bis(b) => b
                .parts()
                .iter()
                .find(|p| p.source(a).contains(&k))
                .and_then(|p| p.act(a, &k))
                .ok_or_else(|| Error::ActionMismatch("point is outside the source".into()))?,
            AVal::Elem(_) => return Err(one_arg("act", v.kind())),
        };
        let text = format_cube_point(a, &out);
        Ok(Shown {
            json: json!({ "point": text }),
            text,
        })
    }

    fn order(&self, v: &AVal<A>, max: usize) -> Result<Shown> {
        let o = match v {
            AVal::Twist(t) => order_by(t, max, TwistTable::is_identity, TwistTable::mul),
            AVal::Bis(b) => {
                let t = b.to_twist_table()?;
                order_by(&t, max, TwistTable::is_identity, TwistTable::mul)
            }
            AVal::Elem(x) => {
                let g = self.action.group();
                order_by(x, max, |a| g.is_identity(a), |a, b| g.mul(a, b))
            }
        };
        Ok(order_shown(o))
    }

    fn center(&self, v: &AVal<A>) -> Result<Shown> {
        Err(one_arg("center", v.kind()))
    }

    fn witness(&self, u: &str, v: &str) -> Result<Shown> {
        let a = &self.action;
        let (u, v) = (parse_brick_set(a, u)?, parse_brick_set(a, v)?);
        let s = TwistedBisection::min_witness(a.clone(), &u, &v)?;
        let (src, rng) = (s.source(), s.range());
        Ok(Shown {
            text: s.to_string(),
            json: json!({
                "bisection": s.to_json(),
                "text": s.to_string(),
                "source": format_brick_set(a, &src),
                "range": format_brick_set(a, &rng),
                "source_equals_u": src.set_eq(&u),
                "range_within_v": rng.is_subset(&v),
            }),
        })
    }
}
