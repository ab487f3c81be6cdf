//! Browser bindings. Every export returns a JSON string or throws a string error.
//!
//! The plain functions in [`api`] carry the logic so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use diatomic::encoding::{digit_sum, gaps_of, parse_nat, to_odd};
    use diatomic::stern::build_table;
    use diatomic::subsets::SUBSET_DIGIT_SUM_LIMIT;
    use diatomic::sympoly::{build_p, build_q, Format, MAX_P_ARITY, MAX_Q_ARITY};
    use diatomic::{stern_pair, stern_via_det, stern_via_gaps, stern_via_subsets, Nat};
    use serde_json::json;

    /// Largest prefix the plot is allowed to request.
    pub const MAX_TABLE: usize = 1 << 16;

    fn err(e: impl std::fmt::Display) -> String {
        e.to_string()
    }

    /// Evaluates `n` through every applicable route and reports each value.
    pub fn evaluate(input: &str) -> Result<String, String> {
        let n = parse_nat(input.trim()).map_err(err)?;
        let pair = stern_pair(&n);
        let mut routes = vec![json!({"algo": "pair", "value": pair.to_string()})];
        if n != Nat::from(0u32) {
            let (odd, twos) = to_odd(&n).map_err(err)?;
            routes.push(json!({"algo": "gaps", "value": stern_via_gaps(&odd).map_err(err)?.to_string()}));
            routes.push(json!({"algo": "det", "value": stern_via_det(&odd).map_err(err)?.to_string()}));
            if digit_sum(&odd) <= SUBSET_DIGIT_SUM_LIMIT {
                let v = stern_via_subsets(&odd).map_err(err)?;
                routes.push(json!({"algo": "subsets", "value": v.to_string()}));
            }
            let code = gaps_of(&odd).map_err(err)?;
            let agree = routes.iter().all(|r| r["value"] == routes[0]["value"]);
            return Ok(json!({
                "n": n.to_string(),
                "odd": odd.to_string(),
                "twos": twos,
                "gaps": code.gaps(),
                "routes": routes,
                "agree": agree,
            })
            .to_string());
        }
        Ok(json!({"n": "0", "routes": routes, "agree": true}).to_string())
    }

    /// First `count` values of the sequence as a JSON array of numbers.
    pub fn table(count: usize) -> Result<String, String> {
        if count > MAX_TABLE {
            return Err(format!("count {count} exceeds {MAX_TABLE}"));
        }
        let t = build_table(count).map_err(err)?;
        serde_json::to_string(t.values()).map_err(err)
    }

    /// Renders q_r or p_r as text and LaTeX.
    pub fn polynomial(r: usize, basis: &str) -> Result<String, String> {
        let (poly, var) = match basis {
            "q" if r <= MAX_Q_ARITY => (build_q(r).map_err(err)?, "y"),
            "p" if r <= MAX_P_ARITY => (build_p(r).map_err(err)?, "x"),
            "q" | "p" => return Err(format!("arity {r} too large for basis {basis}")),
            other => return Err(format!("unknown basis {other:?}")),
        };
        Ok(json!({
            "terms": poly.len(),
            "text": poly.render(Format::Text, var),
            "latex": poly.render(Format::Latex, var),
        })
        .to_string())
    }
}

#[wasm_bindgen]
pub fn evaluate(input: &str) -> Result<String, JsError> {
    api::evaluate(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn table(count: usize) -> Result<String, JsError> {
    api::table(count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn polynomial(r: usize, basis: &str) -> Result<String, JsError> {
    api::polynomial(r, basis).map_err(|e| JsError::new(&e))
}
