use planar_hopf::algebra::format_coeff;
use planar_hopf::cm;
use planar_hopf::forest::PlanarTree;
use planar_hopf::matrix::IntMatrix;
use planar_hopf::series::PowerSeries;
use planar_hopf::shuffle;
use planar_hopf::{Coeff, DecorationSet, Forest, LinComb, Tensor};
use serde_json::{json, Value};

/// Terms largest first, matching the text renderers.
fn terms_desc<K: Ord + Clone>(x: &LinComb<K>) -> Vec<(&K, &Coeff)> {
    let mut v: Vec<_> = x.iter().collect();
    v.reverse();
    v
}

pub fn coeff(c: &Coeff) -> Value {
    Value::String(format_coeff(c))
}

pub fn tree_json(set: &DecorationSet, t: &PlanarTree) -> Value {
    json!({
        "d": set.token(t.root()),
        "children": t.subtrees().iter().map(|c| tree_json(set, c)).collect::<Vec<_>>(),
    })
}

pub fn forest_json(set: &DecorationSet, f: &Forest) -> Value {
    Value::Array(f.trees().iter().map(|t| tree_json(set, t)).collect())
}

pub fn element<K: Ord + Clone>(x: &LinComb<K>, mut show: impl FnMut(&K) -> String) -> Value {
    let terms: Vec<Value> =
        terms_desc(x).into_iter().map(|(k, c)| json!({"coeff": coeff(c), "forest": show(k)})).collect();
    json!({ "terms": terms })
}

pub fn e_basis(x: &LinComb<Forest>, set: &DecorationSet) -> Value {
    let mut v = element(x, |f| set.render(f));
    v["basis"] = json!("e");
    v
}

pub fn tensor<K: Ord + Clone>(t: &Tensor<K>, mut show: impl FnMut(&K) -> Value) -> Value {
    let mut terms: Vec<Value> = t
        .iter()
        .map(|(ks, c)| json!({"coeff": coeff(c), "factors": ks.iter().map(&mut show).collect::<Vec<_>>()}))
        .collect();
    terms.reverse();
    json!({ "arity": t.arity(), "terms": terms })
}

pub fn cm_word(w: &cm::Word) -> Value {
    Value::Array(
        w.0.iter()
            .map(|l| match l {
                cm::Letter::U(n) => json!(["u", n]),
                cm::Letter::V(n) => json!(["v", n]),
            })
            .collect(),
    )
}

pub fn v_polynomial(p: &cm::VPolynomial) -> Value {
    let terms: Vec<Value> = terms_desc(p).into_iter().map(|(w, c)| json!({"coeff": coeff(c), "word": cm_word(w)})).collect();
    json!({ "terms": terms })
}

pub fn shuffle_word(w: &shuffle::Word) -> Value {
    json!({ "word": w.0.iter().map(|g| g.name.clone()).collect::<Vec<_>>() })
}

pub fn word_element(x: &shuffle::WordElement) -> Value {
    let terms: Vec<Value> = terms_desc(x)
        .into_iter()
        .map(|(w, c)| json!({"coeff": coeff(c), "word": shuffle_word(w)["word"].clone()}))
        .collect();
    json!({ "terms": terms })
}

pub fn matrix(basis: &[Forest], m: &IntMatrix, set: &DecorationSet) -> Value {
    json!({
        "basis": basis.iter().map(|f| set.render(f)).collect::<Vec<_>>(),
        "rows": m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn series(s: &PowerSeries) -> Value {
    json!({ "order": s.order(), "coeffs": s.coeffs().iter().map(format_coeff).collect::<Vec<_>>() })
}

pub fn series_text(s: &PowerSeries) -> String {
    s.coeffs().iter().map(format_coeff).collect::<Vec<_>>().join(" ")
}
