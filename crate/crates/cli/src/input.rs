use std::io::Read;
use std::path::Path;

use biclosure::{Poset, PosetJson};

use crate::Failure;

/// Reads a poset from a path, from stdin (`-`), or from inline JSON (any
/// argument starting with `{`).
pub fn load(arg: &str) -> Result<Poset, Failure> {
    let (source, text) = if arg.trim_start().starts_with('{') {
        ("<inline>".to_string(), arg.to_string())
    } else if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("<stdin>: {e}")))?;
        ("<stdin>".to_string(), text)
    } else {
        let text = std::fs::read_to_string(Path::new(arg))
            .map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        (arg.to_string(), text)
    };
    parse(&source, &text)
}

pub fn parse(source: &str, text: &str) -> Result<Poset, Failure> {
    let json: PosetJson = serde_json::from_str(text)
        .map_err(|e| Failure::Usage(format!("{source}:{}:{}: {e}", e.line(), e.column())))?;
    Poset::from_json(&json).map_err(|e| Failure::Usage(format!("{source}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_carry_location() {
        let Err(Failure::Usage(msg)) = parse("x.json", "{\n  \"elements\": [\"a\",]\n}") else {
            panic!("expected a usage error");
        };
        assert!(msg.starts_with("x.json:2:"), "{msg}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse("x", r#"{"elements": ["a"], "order": []}"#).is_err());
    }

    #[test]
    fn cycles_are_input_errors() {
        let text = r#"{"elements": ["a", "b"], "le": [["a", "b"], ["b", "a"]]}"#;
        assert!(matches!(parse("x", text), Err(Failure::Usage(_))));
    }

    #[test]
    fn inline_json() {
        let p = load(r#"{"elements": ["a", "b"], "le": [["a", "b"]]}"#).unwrap();
        assert!(p.le(0, 1));
    }
}
