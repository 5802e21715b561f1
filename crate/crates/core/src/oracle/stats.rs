use super::{Dd, HiPrecValue};

/// Whether errors are measured as `|ŷ - y|` or `|ŷ - y| / |y|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorMode {
    Absolute,
    Relative,
}

impl ErrorMode {
    pub fn name(&self) -> &'static str {
        match self {
            ErrorMode::Absolute => "absolute",
            ErrorMode::Relative => "relative",
        }
    }

    pub fn error(&self, computed: f64, reference: &HiPrecValue) -> f64 {
        match self {
            ErrorMode::Absolute => reference.abs_error(computed),
            ErrorMode::Relative => reference.rel_error(computed),
        }
    }
}

/// Summary of a batch of errors. Infinite errors are counted in
/// `infinity_count` and left out of `max`, `mean` and `std`, which are `None`
/// when no finite error was seen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorStats {
    pub count: usize,
    pub max: Option<f64>,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub infinity_count: usize,
}

impl ErrorStats {
    /// Largest finite error, or 0 when there is none.
    pub fn max_or_zero(&self) -> f64 {
        self.max.unwrap_or(0.0)
    }
}

/// Streaming accumulator behind [`ErrorStats`]. The mean and the population
/// standard deviation come from double-double sums of `e` and `e²`.
#[derive(Clone, Copy, Debug, Default)]
pub struct StatsCollector {
    count: usize,
    finite: usize,
    infinite: usize,
    max: f64,
    sum: Dd,
    sum_sq: Dd,
}

impl StatsCollector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_error(&mut self, e: f64) {
        self.count += 1;
        if !e.is_finite() {
            self.infinite += 1;
            return;
        }
        let e = e.abs();
        self.finite += 1;
        self.max = self.max.max(e);
        self.sum = self.sum.add_f64(e);
        self.sum_sq = self.sum_sq + Dd::from_prod(e, e);
    }

    pub fn push(&mut self, mode: ErrorMode, computed: f64, reference: &HiPrecValue) {
        self.push_error(mode.error(computed, reference));
    }

    pub fn merge(&mut self, other: &StatsCollector) {
        self.count += other.count;
        self.finite += other.finite;
        self.infinite += other.infinite;
        self.max = self.max.max(other.max);
        self.sum = self.sum + other.sum;
        self.sum_sq = self.sum_sq + other.sum_sq;
    }

    pub fn finish(&self) -> ErrorStats {
        if self.finite == 0 {
            return ErrorStats {
                count: self.count,
                max: None,
                mean: None,
                std: None,
                infinity_count: self.infinite,
            };
        }
        let n = Dd::new(self.finite as f64);
        let mean = self.sum / n;
        let var = self.sum_sq / n - mean * mean;
        let var = if var.hi < 0.0 { Dd::ZERO } else { var };
        ErrorStats {
            count: self.count,
            max: Some(self.max),
            mean: Some(mean.to_f64()),
            std: Some(var.sqrt().to_f64()),
            infinity_count: self.infinite,
        }
    }
}

/// Statistics of the errors of `(computed, reference)` pairs.
pub fn collect_stats<'a, I>(mode: ErrorMode, pairs: I) -> ErrorStats
where
    I: IntoIterator<Item = (f64, &'a HiPrecValue)>,
{
    let mut c = StatsCollector::new();
    for (computed, reference) in pairs {
        c.push(mode, computed, reference);
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty() {
        let s = StatsCollector::new().finish();
        assert_eq!(s.count, 0);
        assert_eq!((s.max, s.mean, s.std), (None, None, None));
    }

    #[test]
    fn single_pair() {
        let o = Oracle::default();
        let one = o.from_f64(1.0);
        let s = collect_stats(ErrorMode::Relative, [(1.0 + f64::EPSILON, &one)]);
        assert_eq!(s.max, Some(f64::EPSILON));
        assert_eq!(s.mean, Some(f64::EPSILON));
        assert_eq!(s.std, Some(0.0));
        let mut c = StatsCollector::new();
        c.push_error(2f64.powi(-53));
        let s = c.finish();
        assert_eq!(
            (s.max, s.mean, s.std),
            (Some(2f64.powi(-53)), Some(2f64.powi(-53)), Some(0.0))
        );
    }

    #[test]
    fn zero_reference_is_infinite() {
        let o = Oracle::default();
        let zero = o.from_f64(0.0);
        let s = collect_stats(ErrorMode::Relative, [(1.0, &zero), (0.0, &zero)]);
        assert_eq!(s.count, 2);
        assert_eq!(s.infinity_count, 1);
        assert_eq!(s.max, Some(0.0));
    }

    #[test]
    fn max_is_exact_and_merge_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let errs: Vec<f64> = (0..10_000).map(|_| rng.gen::<f64>() * 1e-14).collect();
        let mut all = StatsCollector::new();
        errs.iter().for_each(|&e| all.push_error(e));
        let mut parts = [StatsCollector::new(), StatsCollector::new()];
        for (i, &e) in errs.iter().rev().enumerate() {
            parts[i % 2].push_error(e);
        }
        let (a, b) = (parts[0], parts[1]);
        let mut merged = b;
        merged.merge(&a);
        let s1 = all.finish();
        let s2 = merged.finish();
        let mut sorted = errs.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(s1.max, Some(*sorted.last().unwrap()));
        assert_eq!(s1.max, s2.max);
        assert_eq!(s1.mean, s2.mean);
        assert!((s1.std.unwrap() - s2.std.unwrap()).abs() <= 1e-30);
        let mean = errs.iter().sum::<f64>() / errs.len() as f64;
        assert!((s1.mean.unwrap() - mean).abs() <= 1e-12 * mean);
    }
}
