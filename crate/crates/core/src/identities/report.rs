use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::catalog::{IdentityId, Status};
use crate::ComplexValue;

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub params: BTreeMap<String, f64>,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub status: Status,
    pub notes: String,
}

impl IdentityReport {
    /// Compare two values directly.
    pub fn new(id: IdentityId, params: &[(&str, f64)], lhs: ComplexValue, rhs: ComplexValue) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_residual = if abs_residual == 0.0 { 0.0 } else if scale > 0.0 { abs_residual / scale } else { f64::INFINITY };
        let tolerance = id.tolerance();
        let mut r = IdentityReport {
            id,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            pass: false,
            status: id.status(),
            notes: id.notes().to_string(),
        };
        r.set_tolerance(tolerance);
        r
    }

    /// Compare exponentials of two logarithmic values; used whenever the
    /// logarithms may sit on different branches.
    pub fn exp_space(id: IdentityId, params: &[(&str, f64)], ln_lhs: ComplexValue, ln_rhs: ComplexValue) -> Self {
        // Factor out the common magnitude so large logs do not overflow.
        let shift = ComplexValue::new(ln_lhs.re.max(ln_rhs.re), 0.0);
        let mut r = Self::new(id, params, (ln_lhs - shift).exp(), (ln_rhs - shift).exp());
        if shift.re != 0.0 {
            r.append_note(&format!("exponentials scaled by exp({:.6e})", -shift.re));
        }
        r
    }

    /// A check that could not be evaluated; always a failure.
    pub fn from_error(id: IdentityId, params: &BTreeMap<String, f64>, err: &crate::Error) -> Self {
        let nan = ComplexValue::new(f64::NAN, f64::NAN);
        let mut r = Self::new(id, &[], nan, nan);
        r.params = params.clone();
        r.abs_residual = f64::INFINITY;
        r.rel_residual = f64::INFINITY;
        r.pass = false;
        r.append_note(&err.to_string());
        r
    }

    pub fn set_tolerance(&mut self, tol: f64) {
        self.tolerance = tol;
        self.pass = self.abs_residual <= tol || self.rel_residual <= tol;
    }

    pub fn with_status(mut self, status: Status, note: &str) -> Self {
        self.status = status;
        self.append_note(note);
        self
    }

    pub fn append_note(&mut self, note: &str) {
        if note.is_empty() {
            return;
        }
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note);
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.append_note(note);
        self
    }

    fn residual_of(&self, lhs: ComplexValue, rhs: ComplexValue) -> (f64, bool, bool) {
        let abs = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel = if abs == 0.0 { 0.0 } else { abs / scale };
        let holds = abs <= self.tolerance || rel <= self.tolerance;
        let fails_clearly = abs > 10.0 * self.tolerance && rel > 10.0 * self.tolerance;
        (abs, holds, fails_clearly)
    }

    /// Attach the residual of the form as printed and set the status from the
    /// evidence: the printed form holding means verified; a clear failure
    /// next to a passing corrected form means erratum-corrected; anything
    /// else is unresolved.
    pub fn with_printed(mut self, lhs: ComplexValue, rhs: ComplexValue, what: &str) -> Self {
        let (abs, holds, fails_clearly) = self.residual_of(lhs, rhs);
        let gap = (lhs - self.lhs).norm() + (rhs - self.rhs).norm();
        if gap <= 1e-3 * self.tolerance * self.lhs.norm().max(1.0) {
            // both readings give the same numbers here; no evidence either way
            self.append_note(&format!("printed form ({what}) coincides with the corrected form at this point"));
            return self;
        }
        self.status = if holds {
            Status::Verified
        } else if fails_clearly && self.pass {
            Status::ErratumCorrected
        } else {
            Status::Unresolved
        };
        let verdict = if holds { "holds" } else { "fails" };
        self.append_note(&format!("printed form ({what}) {verdict} with residual {abs:.3e}"));
        self
    }

    /// Attach the residual of a competing reading of an ambiguous printed
    /// formula; the entry is resolved only when exactly the adopted reading
    /// passes.
    pub fn with_alternative(mut self, lhs: ComplexValue, rhs: ComplexValue, what: &str) -> Self {
        let (abs, holds, _) = self.residual_of(lhs, rhs);
        self.status = if self.pass && !holds { Status::AmbiguousResolved } else { Status::Unresolved };
        let verdict = if holds { "also holds" } else { "fails" };
        self.append_note(&format!("alternative reading ({what}) {verdict} with residual {abs:.3e}"));
        self
    }
}

struct C(ComplexValue);

impl Serialize for C {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &self.0.re)?;
        st.serialize_field("im", &self.0.im)?;
        st.end()
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IdentityReport", 10)?;
        st.serialize_field("id", self.id.name())?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("lhs", &C(self.lhs))?;
        st.serialize_field("rhs", &C(self.rhs))?;
        st.serialize_field("abs_residual", &self.abs_residual)?;
        st.serialize_field("rel_residual", &self.rel_residual)?;
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("pass", &self.pass)?;
        st.serialize_field("status", self.status.as_str())?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} [{}] abs={:.3e} rel={:.3e} tol={:.0e} {} ({})",
            self.id.name(),
            params.join(","),
            self.abs_residual,
            self.rel_residual,
            self.tolerance,
            if self.pass { "pass" } else { "FAIL" },
            self.status.as_str()
        )
    }
}
