//! Dwyer numbers of null-homologous knots in `#^l S^1 x S^2`.
//!
//! The knot is presented as a link `(K, U_1, ..., U_l)` in the 3-sphere with
//! 0-surgery on the unlink `U`. Its Dwyer number is the first weight `q`
//! carrying a nonzero mu-bar invariant of the whole link; when nothing is
//! nonzero up to the cap, only the lower bound `cap + 1` is known.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::chen_milnor::longitude_series;
use crate::diagram::{LinkDiagram, PdCode};
use crate::error::{Error, Result};
use crate::magnus::MinWeight;
use crate::milnor::{milnor_table, MilnorValue};
use crate::Guards;

#[derive(Deserialize)]
struct SurgeryFields {
    knot_component: Option<i64>,
    surgered: Option<Vec<i64>>,
    framings: Option<Vec<i64>>,
    unlink_assertion: Option<bool>,
}

/// A surgery presentation normalised so that the knot is component 1 and
/// the surgered unlink is components `2..=l+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    pub diagram: LinkDiagram,
    pub framings: Vec<i64>,
    pub unlink_assertion: bool,
}

impl SurgeryPresentation {
    /// `knot` and `surgered` are 1-based components of `diagram` and must
    /// cover all of them.
    pub fn new(
        diagram: &LinkDiagram,
        knot: usize,
        surgered: &[usize],
        framings: Vec<i64>,
        unlink_assertion: bool,
    ) -> Result<Self> {
        let n = diagram.n_components();
        if n < 2 {
            return Err(Error::InvalidArgument(
                "a surgery presentation needs a knot and at least one surgered component".into(),
            ));
        }
        if framings.len() != surgered.len() {
            return Err(Error::InvalidArgument(format!(
                "{} framings given for {} surgered components",
                framings.len(),
                surgered.len()
            )));
        }
        let mut order = vec![knot];
        order.extend_from_slice(surgered);
        if order.len() != n {
            return Err(Error::InvalidArgument(format!(
                "knot and surgered components must list all {n} components exactly once"
            )));
        }
        let diagram = diagram.with_component_order(&order)?;
        Ok(SurgeryPresentation {
            diagram,
            framings,
            unlink_assertion,
        })
    }

    pub fn parse(json: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(json)?;
        let pd: PdCode = serde_json::from_value(v.clone())?;
        let f: SurgeryFields = serde_json::from_value(v)?;
        let diagram = LinkDiagram::from_pd(&pd)?;
        let to_index = |x: i64| -> Result<usize> {
            usize::try_from(x)
                .ok()
                .filter(|&i| i >= 1 && i <= diagram.n_components())
                .ok_or(Error::ComponentOutOfRange {
                    index: x.max(0) as usize,
                    available: diagram.n_components(),
                })
        };
        let knot = to_index(f.knot_component.unwrap_or(1))?;
        let surgered = match f.surgered {
            Some(s) => s.into_iter().map(to_index).collect::<Result<Vec<_>>>()?,
            None => (1..=diagram.n_components())
                .filter(|&i| i != knot)
                .collect(),
        };
        let framings = f.framings.unwrap_or_else(|| vec![0; surgered.len()]);
        Self::new(
            &diagram,
            knot,
            &surgered,
            framings,
            f.unlink_assertion.unwrap_or(false),
        )
    }

    /// Number of surgered components.
    pub fn n_surgered(&self) -> usize {
        self.diagram.n_components() - 1
    }

    /// The same presentation with the surgered components permuted;
    /// `order` lists old surgered positions `1..=l`.
    pub fn permute_surgered(&self, order: &[usize]) -> Result<Self> {
        let l = self.n_surgered();
        if order.len() != l || order.iter().any(|&i| i == 0 || i > l) {
            return Err(Error::InvalidArgument(format!(
                "expected a permutation of 1..={l}"
            )));
        }
        let surgered: Vec<usize> = order.iter().map(|&i| i + 1).collect();
        let framings = order.iter().map(|&i| self.framings[i - 1]).collect();
        Self::new(&self.diagram, 1, &surgered, framings, self.unlink_assertion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub condition: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "condition": c.condition,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Run every hypothesis check and report each one.
pub fn check_surgery(
    s: &SurgeryPresentation,
    weight_cap: usize,
    guards: &Guards,
) -> Result<ValidationReport> {
    let d = &s.diagram;
    let n = d.n_components();
    let mut checks = Vec::new();
    let mut push = |condition: &str, passed: bool, detail: String| {
        checks.push(Check {
            condition: condition.to_string(),
            passed,
            detail,
        })
    };
    push(
        "unlink assertion",
        s.unlink_assertion,
        if s.unlink_assertion {
            "asserted by the input".into()
        } else {
            "unlink_assertion must be true".into()
        },
    );
    let bad: Vec<String> = s
        .framings
        .iter()
        .enumerate()
        .filter(|(_, &f)| f != 0)
        .map(|(i, f)| format!("U{} has framing {f}", i + 1))
        .collect();
    push(
        "0-framed surgery",
        bad.is_empty(),
        if bad.is_empty() {
            "all framings 0".into()
        } else {
            bad.join(", ")
        },
    );

    let mut bad = Vec::new();
    for j in 2..=n {
        let lk = d.linking_number(1, j)?;
        if lk != 0 {
            bad.push(format!("lk(K, U{}) = {lk}", j - 1));
        }
    }
    push(
        "knot is null-homologous",
        bad.is_empty(),
        if bad.is_empty() {
            "lk(K, U_i) = 0 for all i".into()
        } else {
            bad.join(", ")
        },
    );

    let mut bad = Vec::new();
    for i in 2..=n {
        for j in i + 1..=n {
            let lk = d.linking_number(i, j)?;
            if lk != 0 {
                bad.push(format!("lk(U{}, U{}) = {lk}", i - 1, j - 1));
            }
        }
    }
    let pairwise = bad.is_empty();
    push(
        "surgered components pairwise unlinked",
        pairwise,
        if pairwise {
            "lk(U_i, U_j) = 0 for all i != j".into()
        } else {
            bad.join(", ")
        },
    );

    if n > 2 && pairwise {
        let keep: Vec<usize> = (2..=n).collect();
        let t = milnor_table(&d.sublink(&keep)?, weight_cap, guards)?;
        let ok = matches!(t.first_nonvanishing, MinWeight::AtLeast(_));
        push(
            "surgered sublink has vanishing invariants",
            ok,
            match t.witnesses().first() {
                None => format!("all mu-bar of U vanish up to weight {weight_cap}"),
                Some(v) => format!("{v} (indices of U)"),
            },
        );
    }
    Ok(ValidationReport { checks })
}

/// The report when every hypothesis holds, otherwise the first failure.
pub fn validate_surgery(
    s: &SurgeryPresentation,
    weight_cap: usize,
    guards: &Guards,
) -> Result<ValidationReport> {
    let report = check_surgery(s, weight_cap, guards)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::Hypothesis {
            condition: c.condition.clone(),
            detail: c.detail.clone(),
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwyerReport {
    pub dwyer_number: MinWeight,
    /// Nonzero invariants at weight `q`.
    pub witnesses: Vec<MilnorValue>,
    pub longitude_depth: String,
    pub massey_weight: Option<usize>,
    pub cap_used: usize,
    /// First nonzero Magnus weight of the knot's longitude in meridians;
    /// `q - 1` whenever `D = q` is found.
    pub longitude_min_weight: MinWeight,
}

impl DwyerReport {
    pub fn summary(&self) -> String {
        match (self.dwyer_number, self.massey_weight) {
            (MinWeight::Exact(q), Some(m)) => {
                format!(
                    "D(K) = {q}; {}; first Massey weight {m}",
                    self.longitude_depth
                )
            }
            (d, _) => format!("D(K) {d}; {}", self.longitude_depth),
        }
    }

    pub fn to_json(&self) -> Value {
        let (d, bound) = match self.dwyer_number {
            MinWeight::Exact(q) => (Some(q), None),
            MinWeight::AtLeast(q) => (None, Some(q)),
        };
        json!({
            "dwyer_number": d,
            "lower_bound": bound,
            "witnesses": self.witnesses.iter().map(MilnorValue::to_json).collect::<Vec<_>>(),
            "longitude_depth": self.longitude_depth,
            "massey_weight": self.massey_weight,
            "cap_used": self.cap_used,
            "longitude_min_weight": self.longitude_min_weight.exact(),
        })
    }
}

pub fn dwyer_number(
    s: &SurgeryPresentation,
    weight_cap: usize,
    guards: &Guards,
) -> Result<DwyerReport> {
    validate_surgery(s, weight_cap, guards)?;
    let t = milnor_table(&s.diagram, weight_cap, guards)?;
    let p = s.diagram.wirtinger();
    let knot = &longitude_series::<num_bigint::BigInt>(&p, weight_cap, guards)?[0];
    let longitude_min_weight = match knot.min_nonzero_weight() {
        Some(w) => MinWeight::Exact(w),
        None => MinWeight::AtLeast(weight_cap),
    };
    let witnesses: Vec<MilnorValue> = t.witnesses().into_iter().cloned().collect();
    let (longitude_depth, massey_weight) = match t.first_nonvanishing {
        MinWeight::Exact(q) => (format!("longitude ∈ G_{} \\ G_{q}", q - 1), Some(q)),
        MinWeight::AtLeast(q) => (format!("longitude ∈ G_{}", q - 1), None),
    };
    Ok(DwyerReport {
        dwyer_number: t.first_nonvanishing,
        witnesses,
        longitude_depth,
        massey_weight,
        cap_used: weight_cap,
        longitude_min_weight,
    })
}

/// Lower bound `ceil((q - 1) / n)` for the Dwyer number of a knotified
/// `n`-component link whose first nonzero invariant has weight `q`.
pub fn knotification_bound(n_components: usize, first_weight: usize) -> Result<usize> {
    if n_components == 0 || first_weight < 2 {
        return Err(Error::InvalidArgument("need n >= 1 and q >= 2".into()));
    }
    Ok((first_weight - 1).div_ceil(n_components))
}

/// After an interior band sum with `k` bands on a link with first nonzero
/// weight `r`, the first nonzero weight is greater than `floor(r / (k + 1))`.
pub fn band_sum_bound(first_weight: usize, k_bands: usize) -> Result<usize> {
    if first_weight < 2 || k_bands == 0 {
        return Err(Error::InvalidArgument("need r >= 2 and k >= 1".into()));
    }
    Ok(first_weight / (k_bands + 1))
}

const FAMILY: [&str; 3] = [
    include_str!("../fixtures/k1.json"),
    include_str!("../fixtures/k2.json"),
    include_str!("../fixtures/k3.json"),
];

/// Bundled surgery presentations `K_i`, the Whitehead double of an iterated
/// Bing double of the Hopf link; expected `D(K_i) = 2i + 2`.
pub fn family_k(i: usize) -> Result<SurgeryPresentation> {
    match i.checked_sub(1).and_then(|k| FAMILY.get(k)) {
        Some(json) => SurgeryPresentation::parse(json),
        None => Err(Error::InvalidArgument(format!(
            "family members 1..={} are bundled, asked for {i}",
            FAMILY.len()
        ))),
    }
}
