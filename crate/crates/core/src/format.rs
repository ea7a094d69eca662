//! Deterministic text output: 17 significant digits, fixed field order.

/// `x` with 17 significant digits in scientific notation (valid JSON);
/// non-finite values become `null`.
pub(crate) fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_owned()
    }
}

/// CSV cell for an optional number; empty when absent.
pub(crate) fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub(crate) fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization cannot fail")
}

/// Builds a flat JSON object with keys in insertion order.
#[derive(Default)]
pub(crate) struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    pub(crate) fn raw(mut self, key: &str, value: impl Into<String>) -> Self {
        self.fields.push((key.to_owned(), value.into()));
        self
    }

    pub(crate) fn num(self, key: &str, x: f64) -> Self {
        self.raw(key, num(x))
    }

    pub(crate) fn int(self, key: &str, x: impl std::fmt::Display) -> Self {
        self.raw(key, x.to_string())
    }

    pub(crate) fn str(self, key: &str, s: &str) -> Self {
        self.raw(key, json_string(s))
    }

    pub(crate) fn opt_num(self, key: &str, x: Option<f64>) -> Self {
        self.raw(key, x.map(num).unwrap_or_else(|| "null".to_owned()))
    }

    pub(crate) fn opt_int(self, key: &str, x: Option<usize>) -> Self {
        self.raw(
            key,
            x.map(|v| v.to_string())
                .unwrap_or_else(|| "null".to_owned()),
        )
    }

    pub(crate) fn build(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}:{v}", json_string(k)))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [
            1.0,
            std::f64::consts::PI,
            -1e-300,
            4.0 * std::f64::consts::PI / 3.0,
            123456.789,
        ] {
            let s = num(x);
            let mantissa = s
                .split('e')
                .next()
                .unwrap()
                .trim_start_matches('-')
                .replace('.', "");
            assert_eq!(mantissa.len(), 17, "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), x);
            assert_eq!(serde_json::from_str::<f64>(&s).unwrap(), x);
        }
        assert_eq!(num(f64::NAN), "null");
    }

    #[test]
    fn object_order_is_insertion_order() {
        let o = JsonObject::default()
            .int("b", 1)
            .str("a", "x\"y")
            .opt_num("c", None)
            .build();
        assert_eq!(o, r#"{"b":1,"a":"x\"y","c":null}"#);
    }
}
