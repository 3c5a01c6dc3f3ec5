//! JSON rendering with input labels in place of internal vertex ids.

use std::collections::BTreeMap;

use dhdecomp::audit::{AuditReport, Witness};
use dhdecomp::discharge::{format_sixths, Charge, ChargeLedger, ChargeReport, Element, Transfer, Via};
use dhdecomp::format::Labels;
use dhdecomp::patterns::{CatalogWitness, Pattern};
use dhdecomp::reductions::TraceStep;
use dhdecomp::{Dart, Edge, Face, Vertex};
use serde_json::{json, Map, Value};

pub struct Render<'a> {
    pub labels: &'a Labels,
}

impl Render<'_> {
    pub fn vertex(&self, v: Vertex) -> Value {
        serde_json::to_value(self.labels.label(v)).expect("label")
    }

    pub fn vertices(&self, vs: impl IntoIterator<Item = Vertex>) -> Value {
        Value::Array(vs.into_iter().map(|v| self.vertex(v)).collect())
    }

    pub fn edge(&self, e: Edge) -> Value {
        json!([self.vertex(e.lo()), self.vertex(e.hi())])
    }

    pub fn face_id(&self, d: Dart) -> String {
        format!("{}->{}", self.labels.label(d.tail), self.labels.label(d.head))
    }

    pub fn face(&self, f: &Face) -> Value {
        json!({
            "id": self.face_id(f.id()),
            "size": f.size(),
            "boundary": self.vertices(f.vertices()),
            "simple": f.is_simple(),
        })
    }

    pub fn element(&self, e: Element) -> String {
        match e {
            Element::Vertex(v) => format!("v:{}", self.labels.label(v)),
            Element::Face(d) => format!("f:{}", self.face_id(d)),
        }
    }

    fn charges(&self, m: &BTreeMap<Element, Charge>) -> Value {
        Value::Object(m.iter().map(|(&e, c)| (self.element(e), Value::String(format_sixths(c)))).collect())
    }

    fn transfer(&self, t: &Transfer) -> Value {
        let via = match t.via {
            Via::Edge(e) => json!({ "edge": self.edge(e) }),
            Via::Corner(d) => json!({ "corner": [self.vertex(d.tail), self.vertex(d.head)] }),
        };
        json!({
            "rule": format!("{:?}", t.rule),
            "from": self.element(t.from),
            "to": self.element(t.to),
            "amount": format_sixths(&t.amount),
            "via": via,
        })
    }

    pub fn discharge(&self, ledger: &ChargeLedger, report: &ChargeReport) -> Value {
        let history = |hs: &[dhdecomp::discharge::ElementHistory]| -> Value {
            hs.iter()
                .map(|h| {
                    json!({
                        "element": self.element(h.element),
                        "initial": format_sixths(&h.initial),
                        "final": format_sixths(&h.final_charge),
                        "transfers": h.transfers.iter().map(|t| self.transfer(t)).collect::<Vec<_>>(),
                    })
                })
                .collect()
        };
        json!({
            "total_initial": format_sixths(&report.total_initial),
            "total_final": format_sixths(&report.total_final),
            "initial": self.charges(&ledger.initial),
            "final": self.charges(&ledger.charge),
            "log": ledger.log.iter().map(|t| self.transfer(t)).collect::<Vec<_>>(),
            "negatives": history(&report.negatives),
            "positives": history(&report.positives),
            "notes": report.notes,
        })
    }

    pub fn witness(&self, w: &Witness) -> Value {
        match w {
            Witness::Vertex { vertex, degree } => json!({ "vertex": self.vertex(*vertex), "degree": degree }),
            Witness::Edge { edge } => json!({ "edge": self.edge(*edge) }),
            Witness::ChordedCycle { cycle, chord } => {
                json!({ "cycle": self.vertices(cycle.iter().copied()), "chord": self.edge(*chord) })
            }
            Witness::Faces { faces, shared } => json!({
                "faces": faces.iter().map(|&f| self.face_id(f)).collect::<Vec<_>>(),
                "shared_edge": shared.map(|e| self.edge(e)),
            }),
            Witness::Face { face } => json!({ "face": self.face_id(*face) }),
            Witness::Configuration { name, mapping } => {
                json!({ "configuration": name, "mapping": self.vertices(mapping.iter().copied()) })
            }
        }
    }

    pub fn audit(&self, report: &AuditReport) -> Value {
        json!({
            "clean": report.is_clean(),
            "items_violated": report.items().iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            "violations": report.violations.iter().map(|v| json!({
                "item": v.item.to_string(),
                "witness": self.witness(&v.witness),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn mapping(&self, labels: &[&str], vs: &[Vertex]) -> Value {
        Value::Object(labels.iter().zip(vs).map(|(l, &v)| (l.to_string(), self.vertex(v))).collect::<Map<_, _>>())
    }

    pub fn catalog_witness(&self, w: &CatalogWitness, p: &Pattern) -> Value {
        json!({ "configuration": w.name, "mapping": self.mapping(&p.labels, &w.witness.mapping) })
    }

    pub fn trace_step(&self, s: &TraceStep) -> Value {
        match s {
            TraceStep::Reduction { rule, recipe, labeling } => json!({
                "step": "reduction",
                "rule": rule.to_string(),
                "recipe": recipe,
                "labeling": Value::Object(labeling.iter().map(|(l, v)| (l.to_string(), self.vertex(*v))).collect()),
            }),
            TraceStep::Fallback { vertices, edges } => json!({
                "step": "fallback",
                "vertices": self.vertices(vertices.iter().copied()),
                "edges": edges,
            }),
        }
    }
}
