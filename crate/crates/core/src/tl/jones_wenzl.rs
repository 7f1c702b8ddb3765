use std::sync::{Arc, Mutex, OnceLock};

use super::element::TLElement;
use super::OracleConfig;
use crate::error::{Error, Result};
use crate::qcore::Cyclo;

fn cache() -> &'static Mutex<Vec<Arc<TLElement>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<TLElement>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// The Jones–Wenzl projector `f^(n)` with the default limits.
pub fn jones_wenzl(n: usize) -> Result<Arc<TLElement>> {
    jones_wenzl_with(n, &OracleConfig::default())
}

/// `f^(n)` by Wenzl's recursion
/// `f^(n) = f^(n-1)⊗1 - (Δ_{n-2}/Δ_{n-1}) (f^(n-1)⊗1) e_{n-1} (f^(n-1)⊗1)`.
///
/// Results are memoized in an append-only table shared by all threads; the
/// lock is held while extending it, so each projector is built once.
pub fn jones_wenzl_with(n: usize, config: &OracleConfig) -> Result<Arc<TLElement>> {
    if n > config.max_color {
        return Err(Error::capacity(format!(
            "projector f^({n}) exceeds the color limit {}",
            config.max_color
        )));
    }
    let mut table = cache().lock().unwrap();
    if table.is_empty() {
        table.push(Arc::new(TLElement::identity(0)));
    }
    while table.len() <= n {
        let k = table.len();
        let next = if k == 1 {
            TLElement::identity(1)
        } else {
            wenzl_step(&table[k - 1], k)?
        };
        table.push(Arc::new(next));
    }
    Ok(Arc::clone(&table[n]))
}

fn wenzl_step(prev: &TLElement, k: usize) -> Result<TLElement> {
    let lifted = prev.tensor_id();
    let ratio = Cyclo::delta(k as u32 - 2) / Cyclo::delta(k as u32 - 1);
    let middle = lifted.mul(&TLElement::e(k, k - 1)?)?.mul(&lifted)?;
    lifted.sub(&middle.scale(&ratio.to_vrational()))
}
