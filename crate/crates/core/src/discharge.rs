//! Discharging with exact rational charges.
//!
//! Every vertex starts with `deg - 4` and every face with `size - 4`, so the
//! total is `-4 * chi`. Three rules then move charge:
//!
//! * R1: a 3-face receives 1/3 across each boundary edge from the face on the
//!   other side.
//! * R2: a 3-vertex on a 4⁻-face receives 1/2 from each of its other two
//!   corners; otherwise it receives 1/3 from each corner.
//! * R3: a 5⁺-vertex gives 1/6 to every incident 4⁺-face, and for each incident
//!   3-face `[xyz]` gives 1/6 to the face across `yz`.
//!
//! Transfers are logged, so final charges can be replayed from the log.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::embedding::{Dart, EmbeddedGraph, FaceId, FaceSet};
use crate::graph::{Edge, Vertex};

pub type Charge = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum Element {
    Vertex(Vertex),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(d) => write!(f, "f[{d}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DischargeRule {
    R1,
    R2,
    R3,
}

/// Where a transfer happens: the edge it crosses or the corner it uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Via {
    Edge(Edge),
    Corner(Dart),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub rule: DischargeRule,
    pub from: Element,
    pub to: Element,
    #[serde(serialize_with = "sixths")]
    pub amount: Charge,
    pub via: Via,
}

/// Renders a charge over the denominator 6, e.g. `-3/6`.
pub fn format_sixths(c: &Charge) -> String {
    let scaled = *c * Charge::from_integer(6);
    if scaled.is_integer() {
        format!("{}/6", scaled.to_integer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn sixths<S: Serializer>(c: &Charge, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_sixths(c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub initial: BTreeMap<Element, Charge>,
    pub charge: BTreeMap<Element, Charge>,
    pub log: Vec<Transfer>,
    /// Degenerate situations met while applying the rules.
    pub notes: Vec<String>,
}

impl ChargeLedger {
    pub fn total(&self) -> Charge {
        self.charge.values().sum()
    }

    pub fn initial_total(&self) -> Charge {
        self.initial.values().sum()
    }

    pub fn get(&self, e: Element) -> Charge {
        self.charge.get(&e).copied().unwrap_or_else(Charge::zero)
    }

    pub fn transfer(&mut self, t: Transfer) {
        debug_assert!(t.amount.is_positive());
        *self.charge.entry(t.from).or_insert_with(Charge::zero) -= t.amount;
        *self.charge.entry(t.to).or_insert_with(Charge::zero) += t.amount;
        self.log.push(t);
    }

    /// Final charges recomputed from the initial charges and the log.
    pub fn replay(&self) -> BTreeMap<Element, Charge> {
        let mut out = self.initial.clone();
        for t in &self.log {
            *out.entry(t.from).or_insert_with(Charge::zero) -= t.amount;
            *out.entry(t.to).or_insert_with(Charge::zero) += t.amount;
        }
        out
    }
}

pub fn initial_charges(eg: &EmbeddedGraph) -> ChargeLedger {
    initial_charges_with(eg, &eg.faces())
}

fn initial_charges_with(eg: &EmbeddedGraph, faces: &FaceSet) -> ChargeLedger {
    let g = eg.graph();
    let four = Charge::from_integer(4);
    let mut initial = BTreeMap::new();
    for v in g.vertices() {
        initial.insert(Element::Vertex(v), Charge::from_integer(g.degree(v) as i64) - four);
    }
    for f in faces.faces() {
        initial.insert(Element::Face(f.id()), Charge::from_integer(f.size() as i64) - four);
    }
    ChargeLedger { charge: initial.clone(), initial, log: Vec::new(), notes: Vec::new() }
}

/// Applies R1, R2 and R3 once each to `ledger`.
pub fn run_discharging(eg: &EmbeddedGraph, mut ledger: ChargeLedger) -> ChargeLedger {
    let g = eg.graph();
    let faces = eg.faces();
    let third = Charge::new(1, 3);
    let half = Charge::new(1, 2);
    let sixth = Charge::new(1, 6);

    for f in faces.faces().iter().filter(|f| f.size() == 3) {
        for &d in &f.boundary {
            let Some(other) = faces.face_of(d.reversed()) else { continue };
            if other.id() != f.id() {
                ledger.transfer(Transfer {
                    rule: DischargeRule::R1,
                    from: Element::Face(other.id()),
                    to: Element::Face(f.id()),
                    amount: third,
                    via: Via::Edge(d.edge()),
                });
            }
        }
    }

    for w in g.vertices().filter(|&w| g.degree(w) == 3) {
        let corners: Vec<(Dart, FaceId, usize)> = eg
            .rotation(w)
            .iter()
            .filter_map(|&u| faces.face_of(Dart::new(w, u)).map(|f| (Dart::new(w, u), f.id(), f.size())))
            .collect();
        let distinct: BTreeSet<FaceId> = corners.iter().map(|c| c.1).collect();
        if distinct.len() < 3 {
            ledger.notes.push(format!("3-vertex {w} lies on only {} distinct faces", distinct.len()));
        }
        let small: BTreeSet<FaceId> = corners.iter().filter(|c| c.2 <= 4).map(|c| c.1).collect();
        if small.len() > 1 {
            ledger.notes.push(format!("3-vertex {w} lies on {} faces of size at most 4", small.len()));
        }
        let (payers, amount): (Vec<&(Dart, FaceId, usize)>, Charge) = match small.first() {
            Some(&h1) => {
                let skip = corners.iter().position(|c| c.1 == h1).expect("h1 is a corner");
                (corners.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, c)| c).collect(), half)
            }
            None => (corners.iter().collect(), third),
        };
        for &(corner, face, _) in payers {
            ledger.transfer(Transfer {
                rule: DischargeRule::R2,
                from: Element::Face(face),
                to: Element::Vertex(w),
                amount,
                via: Via::Corner(corner),
            });
        }
    }

    for x in g.vertices().filter(|&x| g.degree(x) >= 5) {
        for &y in eg.rotation(x) {
            let corner = Dart::new(x, y);
            let Some(f) = faces.face_of(corner) else { continue };
            if f.size() >= 4 {
                ledger.transfer(Transfer {
                    rule: DischargeRule::R3,
                    from: Element::Vertex(x),
                    to: Element::Face(f.id()),
                    amount: sixth,
                    via: Via::Corner(corner),
                });
            } else if f.size() == 3 {
                let opposite = f.boundary.iter().find(|d| d.tail != x && d.head != x).copied();
                let Some(yz) = opposite else { continue };
                let Some(across) = faces.face_of(yz.reversed()) else { continue };
                if across.id() != f.id() {
                    ledger.transfer(Transfer {
                        rule: DischargeRule::R3,
                        from: Element::Vertex(x),
                        to: Element::Face(across.id()),
                        amount: sixth,
                        via: Via::Edge(yz.edge()),
                    });
                }
            }
        }
    }
    ledger
}

/// Initial charges followed by the three rules.
pub fn discharge(eg: &EmbeddedGraph) -> ChargeLedger {
    run_discharging(eg, initial_charges(eg))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementHistory {
    pub element: Element,
    #[serde(serialize_with = "sixths")]
    pub initial: Charge,
    #[serde(rename = "final", serialize_with = "sixths")]
    pub final_charge: Charge,
    pub transfers: Vec<Transfer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeReport {
    #[serde(serialize_with = "sixths")]
    pub total_initial: Charge,
    #[serde(serialize_with = "sixths")]
    pub total_final: Charge,
    pub negatives: Vec<ElementHistory>,
    pub positives: Vec<ElementHistory>,
    pub notes: Vec<String>,
}

/// Elements whose final charge (recomputed from the log) is non-zero.
pub fn final_charge_report(ledger: &ChargeLedger) -> ChargeReport {
    let finals = ledger.replay();
    let history = |e: Element, c: Charge| ElementHistory {
        element: e,
        initial: ledger.initial.get(&e).copied().unwrap_or_else(Charge::zero),
        final_charge: c,
        transfers: ledger.log.iter().filter(|t| t.from == e || t.to == e).cloned().collect(),
    };
    let mut negatives = Vec::new();
    let mut positives = Vec::new();
    for (&e, &c) in &finals {
        if c.is_negative() {
            negatives.push(history(e, c));
        } else if c.is_positive() {
            positives.push(history(e, c));
        }
    }
    ChargeReport {
        total_initial: ledger.initial_total(),
        total_final: finals.values().sum(),
        negatives,
        positives,
        notes: ledger.notes.clone(),
    }
}

/// Lower bound on the final charge of a d-face with t incident 3-vertices,
/// d ≥ 7: it keeps `d - 4`, pays at most 1/3 per non-3-vertex corner and 1/2
/// per 3-vertex corner.
pub fn large_face_bound(d: i64, t: i64) -> Charge {
    Charge::from_integer(d - 4) - Charge::new(d - t, 3) - Charge::new(t, 2)
}

/// `2d/3 - 4 - t/6`, the closed form of `large_face_bound`.
pub fn large_face_closed_form(d: i64, t: i64) -> Charge {
    Charge::new(2 * d, 3) - Charge::from_integer(4) - Charge::new(t, 6)
}

/// `7d/12 - 4`.
pub fn large_face_floor(d: i64) -> Charge {
    Charge::new(7 * d, 12) - Charge::from_integer(4)
}

/// A 6-face pays at most 1/2 to each of at most three 3-vertices.
pub fn six_face_bound() -> Charge {
    Charge::from_integer(2) - Charge::new(3, 2)
}

/// The three lower bounds for a 5-face: no adjacent 3-face; one adjacent
/// 3-face and t ≤ 1; t = 2 with a 5⁺-vertex helping.
pub fn five_face_bounds() -> [Charge; 3] {
    let one = Charge::from_integer(1);
    let (half, third, sixth) = (Charge::new(1, 2), Charge::new(1, 3), Charge::new(1, 6));
    [one - half - half, one - half - third, one + sixth - third - (third + half)]
}

/// A 3-face with three adjacent faces and no 4⁻-corner.
pub fn triangle_bound() -> Charge {
    Charge::from_integer(-1) + Charge::new(1, 3) * Charge::from_integer(3)
}

/// Final charge of a 5⁺-vertex of degree `deg` when every corner pays 1/6.
pub fn big_vertex_final(deg: i64) -> Charge {
    Charge::new(5 * deg - 24, 6)
}

/// Checks the face-case inequalities exactly for every face size up to `d_max`.
pub fn case_inequality_check(d_max: i64) -> bool {
    let zero = Charge::zero();
    let large = (7..=d_max).all(|d| {
        let floor = large_face_floor(d);
        floor > zero
            && (0..=d / 2).all(|t| {
                let v = large_face_bound(d, t);
                v == large_face_closed_form(d, t) && v >= floor
            })
    });
    large
        && six_face_bound() > zero
        && five_face_bounds().iter().all(|b| *b >= zero)
        && triangle_bound() == zero
        && (5..=d_max.max(5)).all(|deg| big_vertex_final(deg) > zero)
}
