//! Parameter lists on the command line: `a..b` (inclusive), `a,b,c` or `a`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Values(pub Vec<u64>);

impl Values {
    pub fn u32s(&self) -> Result<Vec<u32>, String> {
        self.0
            .iter()
            .map(|&v| u32::try_from(v).map_err(|_| format!("{v} is out of range")))
            .collect()
    }
}

/// Largest number of values a range may expand to.
const MAX_VALUES: u64 = 1024;

pub fn parse(s: &str) -> Result<Values, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("invalid number {t:?} in {s:?}"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        if b - a >= MAX_VALUES {
            return Err(format!("range {s:?} is too long"));
        }
        return Ok(Values((a..=b).collect()));
    }
    let values = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
    Ok(Values(values))
}
