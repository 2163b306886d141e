use num_rational::Rational64;
use qra_coop::Angle;

/// Parses an angle literal.
///
/// Accepted forms: multiples of pi (`pi`, `pi/2`, `3pi/8`, `3*pi/8`, `-pi/4`),
/// decimals in radians (`0.785`), and symbols with an optional rational
/// scale (`g12`, `g12/2`, `2*g`). `0` is the exact zero multiple of pi.
pub fn parse_angle(text: &str) -> Result<Angle, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty angle".into());
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t),
    };
    let (head, den) = match body.rsplit_once('/') {
        Some((h, d)) => (h.trim(), Some(parse_positive(d.trim(), t)?)),
        None => (body, None),
    };
    let (coef, name) = if let Some((c, n)) = head.split_once('*') {
        (parse_integer(c.trim(), t)?, n.trim())
    } else if let Some(c) = head.strip_suffix("pi").filter(|c| !c.is_empty() && c.bytes().all(|b| b.is_ascii_digit())) {
        (parse_integer(c, t)?, "pi")
    } else if is_identifier(head) {
        (1, head)
    } else {
        if den.is_some() {
            return Err(format!("`{t}`: a fraction needs `pi` or a symbol in the numerator"));
        }
        let v: f64 = head
            .parse()
            .map_err(|_| format!("`{t}` is not an angle (try `pi/2`, `3pi/8`, `0.5` or a symbol)"))?;
        if !v.is_finite() {
            return Err(format!("`{t}` is not finite"));
        }
        if v == 0.0 {
            return Ok(Angle::pi(0, 1));
        }
        return Ok(Angle::radians(if negative { -v } else { v }));
    };
    if !is_identifier(name) {
        return Err(format!("`{name}` is not a valid symbol name"));
    }
    let scale = Rational64::new(if negative { -coef } else { coef }, den.unwrap_or(1));
    if name == "pi" {
        Ok(Angle::PiMultiple(scale))
    } else {
        Ok(Angle::symbol(name).scaled(scale))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_integer(s: &str, whole: &str) -> Result<i64, String> {
    s.parse().map_err(|_| format!("`{whole}`: `{s}` is not an integer coefficient"))
}

fn parse_positive(s: &str, whole: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(d) if d > 0 => Ok(d),
        _ => Err(format!("`{whole}`: denominator `{s}` must be a positive integer")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_multiples() {
        assert_eq!(parse_angle("pi/2").unwrap(), Angle::pi(1, 2));
        assert_eq!(parse_angle("3pi/8").unwrap(), Angle::pi(3, 8));
        assert_eq!(parse_angle("3*pi/8").unwrap(), Angle::pi(3, 8));
        assert_eq!(parse_angle("-pi/4").unwrap(), Angle::pi(-1, 4));
        assert_eq!(parse_angle("2pi").unwrap(), Angle::pi(2, 1));
        assert_eq!(parse_angle(" 0 ").unwrap(), Angle::pi(0, 1));
    }

    #[test]
    fn decimals_and_symbols() {
        assert_eq!(parse_angle("0.5").unwrap(), Angle::radians(0.5));
        assert_eq!(parse_angle("-1.25").unwrap(), Angle::radians(-1.25));
        assert_eq!(parse_angle("0.0").unwrap(), Angle::pi(0, 1));
        assert_eq!(parse_angle("g12").unwrap(), Angle::symbol("g12"));
        assert_eq!(parse_angle("g/2").unwrap(), Angle::symbol("g").half());
        assert_eq!(parse_angle("-3*h/4").unwrap(), Angle::symbol("h").scaled(Rational64::new(-3, 4)));
    }

    #[test]
    fn display_round_trips() {
        for text in ["pi/2", "3pi/8", "-pi/4", "2pi", "0", "0.7", "g12", "g/2", "3*g/4", "-1*g/2"] {
            let a = parse_angle(text).unwrap();
            assert_eq!(parse_angle(&a.to_string()).unwrap(), a, "{text}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for text in ["", "pi/0", "pi/-2", "1.5/2", "abc def", "3x/2", "*pi"] {
            assert!(parse_angle(text).is_err(), "{text}");
        }
    }
}
