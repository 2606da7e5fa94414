//! CSV assembly helpers shared by the command-line reports. Quoting
//! follows RFC 4180: fields containing commas, quotes, or newlines are
//! quoted and inner quotes doubled. Scores are printed with six
//! decimals so reruns are byte-identical.

/// Quote a field only when it needs quoting.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Join pre-rendered fields into one line, newline included.
pub fn csv_line<I>(fields: I) -> String
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut parts: Vec<String> = Vec::new();
    for f in fields {
        parts.push(csv_field(f.as_ref()));
    }
    let mut line = parts.join(",");
    line.push('\n');
    line
}

/// Fixed-format score used in every ranking and summary file.
pub fn score(x: f64) -> String {
    format!("{x:.6}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_fields_pass_through() {
        assert_eq!(csv_field("Alice Smith"), "Alice Smith");
        assert_eq!(csv_line(["rank", "author", "score"]), "rank,author,score\n");
    }

    #[test]
    fn troublesome_fields_are_quoted() {
        assert_eq!(csv_field("Smith, Alice"), "\"Smith, Alice\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_field("two\nlines"), "\"two\nlines\"");
        assert_eq!(
            csv_line(["1", "Smith, Alice", "0.5"]),
            "1,\"Smith, Alice\",0.5\n"
        );
    }

    #[test]
    fn scores_are_fixed_width() {
        assert_eq!(score(0.75), "0.750000");
        assert_eq!(score(1.0 / 3.0), "0.333333");
        assert_eq!(score(0.0), "0.000000");
    }
}
