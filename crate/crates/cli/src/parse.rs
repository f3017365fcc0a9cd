use std::ops::RangeInclusive;
use std::str::FromStr;

use rsk_core::NumClass;

/// `d_1,d_2,...`
pub fn int_list<T: FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<T>()
                .map_err(|_| format!("`{part}` is not an integer"))
        })
        .collect()
}

pub fn class(s: &str) -> Result<NumClass, String> {
    match int_list::<i64>(s)?.as_slice() {
        [a, b] => Ok(NumClass::new(*a, *b)),
        other => Err(format!(
            "class needs two coefficients a,b, got {}",
            other.len()
        )),
    }
}

/// `lo..hi` (inclusive) or a single value.
pub fn range<T: FromStr + Copy>(s: &str) -> Result<RangeInclusive<T>, String> {
    let s = s.trim();
    // skip a leading sign so `-3..-1` splits at the right place
    let split = s
        .char_indices()
        .skip(1)
        .find(|&(i, _)| s[i..].starts_with(".."))
        .map(|(i, _)| i);
    let bad = |p: &str| format!("`{p}` is not an integer");
    match split {
        Some(i) => {
            let lo = s[..i].parse::<T>().map_err(|_| bad(&s[..i]))?;
            let hi = s[i + 2..].parse::<T>().map_err(|_| bad(&s[i + 2..]))?;
            Ok(lo..=hi)
        }
        None => {
            let v = s.parse::<T>().map_err(|_| bad(s))?;
            Ok(v..=v)
        }
    }
}

pub fn range_list<T: FromStr + Copy>(s: &str) -> Result<Vec<RangeInclusive<T>>, String> {
    s.split(',').map(range).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!(range::<i64>("-3..6"), Ok(-3..=6));
        assert_eq!(range::<i64>("-3..-1"), Ok(-3..=-1));
        assert_eq!(range::<i64>("4"), Ok(4..=4));
        assert_eq!(range::<i64>("-4"), Ok(-4..=-4));
        assert_eq!(range_list::<i64>("0..4,0"), Ok(vec![0..=4, 0..=0]));
        assert!(range::<u32>("1..x").is_err());
    }

    #[test]
    fn parses_classes() {
        assert_eq!(class("2,-1"), Ok(NumClass::new(2, -1)));
        assert!(class("2").is_err());
        assert!(class("a,b").is_err());
        assert_eq!(int_list::<i64>("5, 0"), Ok(vec![5, 0]));
    }
}
