use crate::algebra::{vertical_dual, Algebra, Table};
use crate::error::{Error, Result};
use crate::properties::check_skew_boolean;
use crate::skew_heyting::{check_sh_axioms, derive_arrow};

/// The vertical dual of a skew Boolean algebra with `x → y = y \ x` and the
/// old bottom as top. `diff.get(x, y)` is `x \ y`.
pub fn from_skew_boolean(a: &Algebra, diff: &Table) -> Result<Algebra> {
    let report = check_skew_boolean(a, diff);
    if let Some(c) = report.first_failure() {
        return Err(Error::PreconditionFailed(format!(
            "not a skew Boolean algebra: {} fails",
            c.name
        )));
    }
    let dual = vertical_dual(a);
    let arrow = Table::from_fn(a.size(), |x, y| diff.get(y, x));
    if let Some(c) = check_sh_axioms(&dual, &arrow)?.first_failure() {
        return Err(Error::InconsistencyDetected(format!(
            "dual of a skew Boolean algebra fails {}",
            c.name
        )));
    }
    if derive_arrow(&dual)?.table() != Some(&arrow) {
        return Err(Error::InconsistencyDetected(
            "dual difference differs from the derived arrow".into(),
        ));
    }
    dual.with_arrow(arrow)
}
