use plawbg::degree::DegreeDistribution;
use plawbg::model::Candidate;

/// Independent full enumeration of the anchored grid.
pub fn oracle_best(dist: &DegreeDistribution, max_bins: usize) -> Candidate {
    let s = dist.summary();
    let alpha = (s.n_d1 as f64).ln() / (s.d_max as f64).ln();
    let residual = |c: &Candidate| -> u128 {
        let mut bins: Vec<u64> = Vec::new();
        for j in 0..c.n_bins {
            let d = if j == 0 {
                1
            } else if j == c.n_bins - 1 {
                c.d_max
            } else {
                (c.d_max as f64).powf(j as f64 / (c.n_bins - 1) as f64).round() as u64
            };
            if bins.last().map_or(true, |&b| d > b) {
                bins.push(d);
            }
        }
        let (mut n, mut m) = (0i128, 0i128);
        for &d in &bins {
            let k = (c.scale * (d as f64).powf(-alpha)).round().max(1.0) as i128;
            n += k;
            m += k * d as i128;
        }
        let dn = (n - s.n as i128).unsigned_abs();
        let dm = (m - s.m as i128).unsigned_abs();
        dn * dn + dm * dm
    };

    let anchor = Candidate {
        n_bins: s.n_bins,
        d_max: s.d_max,
        scale: s.n_d1 as f64,
    };
    let anchor_residual = residual(&anchor);
    // The anchor is scored first; a zero-residual anchor ends the search.
    if anchor_residual == 0 {
        return anchor;
    }

    let mut candidates = vec![(anchor_residual, anchor)];
    let mut tops: Vec<u64> = [0.25, 0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|f| (s.d_max as f64 * f).round().max(2.0) as u64)
        .collect();
    tops.sort_unstable();
    tops.dedup();
    let top_scale = 4.0 * s.n_d1 as f64;
    for n_bins in 2..=max_bins {
        for &d_max in &tops {
            for i in 0..64 {
                let c = Candidate {
                    n_bins,
                    d_max,
                    scale: top_scale.powf(i as f64 / 63.0),
                };
                candidates.push((residual(&c), c));
            }
        }
    }
    candidates
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)))
        .unwrap()
        .1
}
