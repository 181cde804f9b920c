//! Allocation, Myerson revenue and Shapley payment division, and the three
//! agent utilities built on top of them.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{BuyerPanel, Dataset, LearningCurve, MarketConfig};

/// Largest seller count for which Shapley values are enumerated exactly.
pub const SHAPLEY_EXACT_CAP: usize = 20;

/// Every seller's dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct SellerProfile {
    datasets: Vec<Dataset>,
}

impl SellerProfile {
    pub fn new(datasets: Vec<Dataset>) -> Result<Self> {
        let Some(first) = datasets.first() else {
            return Err(Error::NoSellers);
        };
        let groups = first.groups();
        if let Some(bad) = datasets.iter().find(|d| d.groups() != groups) {
            return Err(Error::DimensionMismatch {
                what: "seller dataset",
                expected: groups,
                found: bad.groups(),
            });
        }
        Ok(Self { datasets })
    }

    /// `sellers` copies of the same dataset.
    pub fn symmetric(per_seller: Dataset, sellers: usize) -> Result<Self> {
        Self::new(vec![per_seller; sellers])
    }

    pub fn zeros(groups: usize, sellers: usize) -> Result<Self> {
        Self::symmetric(Dataset::zeros(groups), sellers)
    }

    pub fn sellers(&self) -> usize {
        self.datasets.len()
    }

    pub fn groups(&self) -> usize {
        self.datasets[0].groups()
    }

    pub fn dataset(&self, j: usize) -> &Dataset {
        &self.datasets[j]
    }

    pub fn datasets(&self) -> &[Dataset] {
        &self.datasets
    }

    pub fn dataset_mut(&mut self, j: usize) -> &mut Dataset {
        &mut self.datasets[j]
    }

    /// Each seller's contribution to group `g`.
    pub fn column(&self, g: usize) -> Vec<f64> {
        self.datasets.iter().map(|d| d.get(g)).collect()
    }

    /// Coordinate-wise sum over the sellers in `coalition`.
    pub fn coalition_aggregate(&self, coalition: &[usize]) -> Dataset {
        let mut out = Dataset::zeros(self.groups());
        for g in 0..self.groups() {
            out.set(g, coalition.iter().map(|&j| self.datasets[j].get(g)).sum());
        }
        out
    }

    /// The aggregate dataset of all sellers.
    pub fn aggregate(&self) -> Dataset {
        let all: Vec<usize> = (0..self.sellers()).collect();
        self.coalition_aggregate(&all)
    }

    pub fn is_symmetric(&self) -> bool {
        self.datasets.iter().all(|d| d == &self.datasets[0])
    }
}

/// Per-group reserve prices. An infinite price means no buyer is served.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceVector {
    prices: Vec<f64>,
}

impl PriceVector {
    pub fn new(prices: Vec<f64>) -> Result<Self> {
        if let Some(index) = prices.iter().position(|&p| p.is_nan() || p <= 0.0) {
            return Err(Error::InvalidValue { what: "reserve price", index, value: prices[index] });
        }
        Ok(Self { prices })
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn get(&self, g: usize) -> f64 {
        self.prices[g]
    }

    pub fn groups(&self) -> usize {
        self.prices.len()
    }
}

/// Samples of group `g` allocated to a buyer bidding `bid`.
pub fn allocate(bid: f64, reserve: f64, aggregate_g: f64) -> f64 {
    if bid >= reserve {
        aggregate_g
    } else {
        0.0
    }
}

/// Price charged for predictions trained on `allocated_g` samples.
pub fn revenue(reserve: f64, curve: &LearningCurve, allocated_g: f64) -> f64 {
    let acc = curve.accuracy(allocated_g);
    if acc == 0.0 {
        0.0
    } else {
        reserve * acc
    }
}

/// Number of buyers whose value for group `g` clears `price`.
pub fn clearing_count(buyers: &BuyerPanel, g: usize, price: f64) -> usize {
    buyers.rows().filter(|r| r[g] >= price).count()
}

/// `price * clearing_count`, the revenue multiplier of one group.
pub fn potential_at(buyers: &BuyerPanel, g: usize, price: f64) -> f64 {
    match clearing_count(buyers, g, price) {
        0 => 0.0,
        n => price * n as f64,
    }
}

/// Shapley values of the game `v(T) = G(sum of amounts in T)`.
///
/// Enumerates all `2^M` coalitions, so `M` is capped at [`SHAPLEY_EXACT_CAP`].
pub fn shapley_values(amounts: &[f64], curve: &LearningCurve) -> Result<Vec<f64>> {
    let m = amounts.len();
    if m == 0 {
        return Err(Error::NoSellers);
    }
    if m > SHAPLEY_EXACT_CAP {
        return Err(Error::TooManySellers { sellers: m, cap: SHAPLEY_EXACT_CAP });
    }
    let subsets = 1usize << m;
    let mut total = vec![0.0; subsets];
    let mut value = vec![0.0; subsets];
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        total[mask] = total[mask & (mask - 1)] + amounts[low];
        value[mask] = curve.accuracy(total[mask]);
    }
    // c_k = k! (M-k-1)! / M! = 1 / (M * binom(M-1, k))
    let mut weight = vec![0.0; m];
    let mut binom = 1.0;
    for (k, w) in weight.iter_mut().enumerate() {
        *w = 1.0 / (m as f64 * binom);
        binom = binom * (m - 1 - k) as f64 / (k + 1) as f64;
    }
    let mut phi = vec![0.0; m];
    for (j, out) in phi.iter_mut().enumerate() {
        let bit = 1usize << j;
        let mut acc = 0.0;
        for mask in 0..subsets {
            if mask & bit == 0 {
                acc += weight[mask.count_ones() as usize] * (value[mask | bit] - value[mask]);
            }
        }
        *out = acc;
    }
    Ok(phi)
}

/// Shapley coalition weights `c_T` and rival aggregates `x_T` for every `T`
/// drawn from `rivals`.
pub fn rival_coalitions(rivals: &[f64]) -> Vec<(f64, f64)> {
    let r = rivals.len();
    let m = r + 1;
    let mut binom = vec![1.0; m];
    for k in 1..m {
        binom[k] = binom[k - 1] * (m - k) as f64 / k as f64;
    }
    (0..1usize << r)
        .map(|mask| {
            let size = mask.count_ones() as usize;
            let agg = (0..r).filter(|i| mask & (1 << i) != 0).map(|i| rivals[i]).sum();
            (1.0 / (m as f64 * binom[size]), agg)
        })
        .collect()
}

/// Share of one of `sellers` identical sellers in `G(aggregate)`.
pub fn symmetric_share(aggregate: f64, sellers: usize, curve: &LearningCurve) -> f64 {
    curve.accuracy(aggregate) / sellers as f64
}

/// Payment owed to each seller from one buyer's purchase for group `group`.
pub fn shapley_division(
    sellers: &SellerProfile,
    group: usize,
    reserve: f64,
    bid: f64,
    curve: &LearningCurve,
) -> Result<Vec<f64>> {
    if bid < reserve {
        return Ok(vec![0.0; sellers.sellers()]);
    }
    let phi = shapley_values(&sellers.column(group), curve)?;
    Ok(phi.into_iter().map(|v| reserve * v).collect())
}

/// Every seller's Shapley share of `G` for group `g`, falling back to the
/// symmetric split when the profile is too large to enumerate but symmetric.
fn group_shares(sellers: &SellerProfile, g: usize, curve: &LearningCurve) -> Result<Vec<f64>> {
    let m = sellers.sellers();
    if m > SHAPLEY_EXACT_CAP && sellers.is_symmetric() {
        let share = symmetric_share(sellers.aggregate().get(g), m, curve);
        return Ok(vec![share; m]);
    }
    shapley_values(&sellers.column(g), curve)
}

fn check_dims(config: &MarketConfig, prices: &PriceVector, sellers: &SellerProfile) -> Result<()> {
    let g = config.group_count();
    if prices.groups() != g {
        return Err(Error::DimensionMismatch { what: "prices", expected: g, found: prices.groups() });
    }
    if sellers.groups() != g {
        return Err(Error::DimensionMismatch {
            what: "seller datasets",
            expected: g,
            found: sellers.groups(),
        });
    }
    Ok(())
}

/// Marketplace revenue under truthful bids: `sum_g rho_g * G(x_g)`.
pub fn marketplace_utility(
    config: &MarketConfig,
    prices: &PriceVector,
    sellers: &SellerProfile,
) -> Result<f64> {
    check_dims(config, prices, sellers)?;
    let agg = sellers.aggregate();
    Ok((0..config.group_count())
        .map(|g| potential_at(&config.buyers, g, prices.get(g)) * config.curve.accuracy(agg.get(g)))
        .sum())
}

/// Seller `j`'s Shapley receipts across all clearing buyers, minus production cost.
///
/// All clearing buyers of a group pay the same reserve and share the same
/// learning curve, so receipts are computed once per group and multiplied by
/// the group's potential value.
pub fn seller_utility(
    config: &MarketConfig,
    prices: &PriceVector,
    sellers: &SellerProfile,
    j: usize,
) -> Result<f64> {
    check_dims(config, prices, sellers)?;
    if j >= sellers.sellers() {
        return Err(Error::IndexOutOfRange { what: "seller", index: j, len: sellers.sellers() });
    }
    let mut receipts = 0.0;
    for g in 0..config.group_count() {
        let rho = potential_at(&config.buyers, g, prices.get(g));
        if rho > 0.0 {
            receipts += rho * group_shares(sellers, g, &config.curve)?[j];
        }
    }
    Ok(receipts - config.costs.cost_of(sellers.dataset(j).samples()))
}

/// Buyer `i`'s surplus when bidding `bids` (one bid per group).
pub fn buyer_utility_with_bids(
    config: &MarketConfig,
    prices: &PriceVector,
    sellers: &SellerProfile,
    i: usize,
    bids: &[f64],
) -> Result<f64> {
    check_dims(config, prices, sellers)?;
    if i >= config.buyers.len() {
        return Err(Error::IndexOutOfRange { what: "buyer", index: i, len: config.buyers.len() });
    }
    let agg = sellers.aggregate();
    let values = config.buyers.row(i);
    Ok((0..config.group_count())
        .map(|g| {
            let alloc = allocate(bids[g], prices.get(g), agg.get(g));
            let acc = config.curve.accuracy(alloc);
            if acc == 0.0 {
                0.0
            } else {
                values[g] * acc - revenue(prices.get(g), &config.curve, alloc)
            }
        })
        .sum())
}

/// Buyer `i`'s surplus under truthful bidding.
pub fn buyer_utility(
    config: &MarketConfig,
    prices: &PriceVector,
    sellers: &SellerProfile,
    i: usize,
) -> Result<f64> {
    if i >= config.buyers.len() {
        return Err(Error::IndexOutOfRange { what: "buyer", index: i, len: config.buyers.len() });
    }
    let bids = config.buyers.row(i).to_vec();
    buyer_utility_with_bids(config, prices, sellers, i, &bids)
}

/// Utilities of every agent for one strategy profile.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Utilities {
    pub marketplace: f64,
    pub sellers: Vec<f64>,
    pub buyers: Vec<f64>,
}

impl Utilities {
    /// All zeros: the outcome of a market that does not form.
    pub fn zero(sellers: usize, buyers: usize) -> Self {
        Self { marketplace: 0.0, sellers: vec![0.0; sellers], buyers: vec![0.0; buyers] }
    }
}

/// Evaluate all three utility functions with one Shapley pass per group.
pub fn all_utilities(
    config: &MarketConfig,
    prices: &PriceVector,
    sellers: &SellerProfile,
) -> Result<Utilities> {
    check_dims(config, prices, sellers)?;
    let groups = config.group_count();
    let agg = sellers.aggregate();
    let rho: Vec<f64> = (0..groups).map(|g| potential_at(&config.buyers, g, prices.get(g))).collect();
    let acc: Vec<f64> = (0..groups).map(|g| config.curve.accuracy(agg.get(g))).collect();

    let marketplace = rho.iter().zip(&acc).map(|(r, a)| r * a).sum();

    let mut seller_u: Vec<f64> = sellers
        .datasets()
        .iter()
        .map(|d| -config.costs.cost_of(d.samples()))
        .collect();
    for g in 0..groups {
        if rho[g] > 0.0 {
            for (u, share) in seller_u.iter_mut().zip(group_shares(sellers, g, &config.curve)?) {
                *u += rho[g] * share;
            }
        }
    }

    let buyers = config
        .buyers
        .rows()
        .map(|row| {
            (0..groups)
                .filter(|&g| row[g] >= prices.get(g) && acc[g] > 0.0)
                .map(|g| (row[g] - prices.get(g)) * acc[g])
                .sum()
        })
        .collect();

    Ok(Utilities { marketplace, sellers: seller_u, buyers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CostStructure, GroupSet};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn market(groups: usize, m: usize, kappa: Vec<f64>, rows: &[Vec<f64>]) -> MarketConfig {
        MarketConfig::new(
            GroupSet::numbered(groups).unwrap(),
            LearningCurve::unit(),
            m,
            CostStructure::new(kappa).unwrap(),
            BuyerPanel::new(groups, rows).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn allocation_examples() {
        assert_eq!(allocate(2.0, 1.0, 7.0), 7.0);
        assert_eq!(allocate(0.5, 1.0, 7.0), 0.0);
        assert_eq!(allocate(1.0, 1.0, 0.0), 0.0);
        assert_eq!(allocate(1.0, 1.0, 3.0), 3.0);
    }

    #[test]
    fn revenue_examples() {
        let unit = LearningCurve::unit();
        assert_eq!(revenue(2.0, &unit, 2.0), 1.0);
        assert_eq!(revenue(2.0, &unit, 0.0), 0.0);
        let c = LearningCurve::new(5.0, 1.0 / 3.0, 3.0).unwrap();
        assert!((revenue(1.0, &c, 1.0) - 4.6667).abs() < 1e-4);
    }

    #[test]
    fn shapley_examples() {
        let unit = LearningCurve::unit();
        let two = SellerProfile::new(vec![Dataset::new(vec![1.0]).unwrap(); 2]).unwrap();
        let pay = shapley_division(&two, 0, 1.0, 1.0, &unit).unwrap();
        assert!(close(pay[0], 0.25, 1e-15) && close(pay[1], 0.25, 1e-15));

        let one = SellerProfile::new(vec![Dataset::new(vec![2.0]).unwrap()]).unwrap();
        assert_eq!(shapley_division(&one, 0, 1.0, 5.0, &unit).unwrap(), vec![0.5]);

        // Two orderings enumerated by hand: G(1)=0, G(3)=2/3, G(4)=3/4.
        let g = |n: f64| unit.accuracy(n);
        let expected = [
            (g(1.0) + g(4.0) - g(3.0)) / 2.0,
            (g(3.0) + g(4.0) - g(1.0)) / 2.0,
        ];
        let asym = SellerProfile::new(vec![
            Dataset::new(vec![1.0]).unwrap(),
            Dataset::new(vec![3.0]).unwrap(),
        ])
        .unwrap();
        let pay = shapley_division(&asym, 0, 1.0, 1.0, &unit).unwrap();
        assert!(close(pay[0], expected[0], 1e-15));
        assert!(close(pay[1], expected[1], 1e-15));
        assert!(close(pay[0] + pay[1], 0.75, 1e-15));
        assert!((pay[0] - 0.0417).abs() < 1e-4 && (pay[1] - 0.7083).abs() < 1e-4);
    }

    #[test]
    fn shapley_below_reserve_pays_nothing() {
        let p = SellerProfile::new(vec![Dataset::new(vec![5.0]).unwrap()]).unwrap();
        assert_eq!(shapley_division(&p, 0, 2.0, 1.0, &LearningCurve::unit()).unwrap(), vec![0.0]);
    }

    #[test]
    fn shapley_cap() {
        let amounts = vec![1.0; SHAPLEY_EXACT_CAP + 1];
        assert!(matches!(
            shapley_values(&amounts, &LearningCurve::unit()),
            Err(Error::TooManySellers { .. })
        ));
    }

    #[test]
    fn marketplace_utility_examples() {
        let s8 = libm::sqrt(8.0);
        let m = market(2, 2, vec![1.0, 1.0], &vec![vec![1.0, 1.0]; 8]);
        let prices = PriceVector::new(vec![1.0, 1.0]).unwrap();
        let profile = SellerProfile::symmetric(Dataset::new(vec![s8 / 2.0, s8 / 2.0]).unwrap(), 2).unwrap();
        let w = marketplace_utility(&m, &prices, &profile).unwrap();
        // direct double sum over buyers and groups
        let mut direct = 0.0;
        for _ in 0..8 {
            for _ in 0..2 {
                direct += 1.0 * (1.0 - 1.0 / s8);
            }
        }
        assert!(close(w, direct, 1e-14));
        assert!((w - 10.3431).abs() < 1e-4);

        let empty = market(2, 2, vec![1.0, 1.0], &[]);
        assert_eq!(marketplace_utility(&empty, &prices, &profile).unwrap(), 0.0);

        let one = market(1, 1, vec![1.0], &[vec![1.0], vec![2.0], vec![3.0]]);
        let p2 = PriceVector::new(vec![2.0]).unwrap();
        let prof = SellerProfile::new(vec![Dataset::new(vec![4.0]).unwrap()]).unwrap();
        assert!(close(marketplace_utility(&one, &p2, &prof).unwrap(), 3.0, 1e-15));
    }

    #[test]
    fn seller_utility_examples() {
        let s8 = libm::sqrt(8.0);
        let m = market(2, 2, vec![1.0, 1.0], &vec![vec![1.0, 1.0]; 8]);
        let prices = PriceVector::new(vec![1.0, 1.0]).unwrap();
        let profile = SellerProfile::symmetric(Dataset::new(vec![s8 / 2.0, s8 / 2.0]).unwrap(), 2).unwrap();
        let v = seller_utility(&m, &prices, &profile, 0).unwrap();
        let symmetric = 0.5 * 2.0 * 8.0 * (1.0 - 1.0 / s8) - 2.0 * (s8 / 2.0);
        assert!(close(v, symmetric, 1e-13));
        assert!((v - 2.3431).abs() < 1e-4);

        let null = SellerProfile::new(vec![
            Dataset::new(vec![0.0, 0.0]).unwrap(),
            Dataset::new(vec![3.0, 3.0]).unwrap(),
        ])
        .unwrap();
        assert_eq!(seller_utility(&m, &prices, &null, 0).unwrap(), 0.0);

        let loss = market(1, 1, vec![10.0], &[vec![1.0]]);
        let p1 = PriceVector::new(vec![1.0]).unwrap();
        let prof = SellerProfile::new(vec![Dataset::new(vec![1.0]).unwrap()]).unwrap();
        assert_eq!(seller_utility(&loss, &p1, &prof, 0).unwrap(), -10.0);
        assert!(seller_utility(&loss, &p1, &prof, 1).is_err());
    }

    #[test]
    fn buyer_utility_examples() {
        // accuracy 0.5 needs 2 samples, accuracy 0.9 needs 10 under the unit curve
        let m = market(2, 1, vec![1.0, 1.0], &[vec![5.0, 2.0]]);
        let prof = SellerProfile::new(vec![Dataset::new(vec![2.0, 10.0]).unwrap()]).unwrap();
        let prices = PriceVector::new(vec![3.0, 3.0]).unwrap();
        assert!(close(buyer_utility(&m, &prices, &prof, 0).unwrap(), 1.0, 1e-15));

        let m2 = market(1, 1, vec![1.0], &[vec![2.0]]);
        let prof2 = SellerProfile::new(vec![Dataset::new(vec![2.0]).unwrap()]).unwrap();
        let p3 = PriceVector::new(vec![3.0]).unwrap();
        assert_eq!(buyer_utility(&m2, &p3, &prof2, 0).unwrap(), 0.0);
    }

    #[test]
    fn all_utilities_agree_with_individual_functions() {
        let m = market(
            2,
            3,
            vec![0.3, 0.7],
            &[vec![1.0, 2.0], vec![3.0, 0.5], vec![2.0, 2.0], vec![0.0, 4.0]],
        );
        let prices = PriceVector::new(vec![2.0, 2.0]).unwrap();
        let prof = SellerProfile::new(vec![
            Dataset::new(vec![1.0, 0.0]).unwrap(),
            Dataset::new(vec![2.5, 1.5]).unwrap(),
            Dataset::new(vec![0.5, 3.0]).unwrap(),
        ])
        .unwrap();
        let all = all_utilities(&m, &prices, &prof).unwrap();
        assert!(close(all.marketplace, marketplace_utility(&m, &prices, &prof).unwrap(), 1e-14));
        for j in 0..3 {
            assert!(close(all.sellers[j], seller_utility(&m, &prices, &prof, j).unwrap(), 1e-14));
        }
        for i in 0..4 {
            assert!(close(all.buyers[i], buyer_utility(&m, &prices, &prof, i).unwrap(), 1e-14));
        }
    }

    #[test]
    fn large_symmetric_profile_uses_closed_form() {
        let m = market(1, 30, vec![0.01], &vec![vec![1.0]; 5]);
        let prices = PriceVector::new(vec![1.0]).unwrap();
        let prof = SellerProfile::symmetric(Dataset::new(vec![1.0]).unwrap(), 30).unwrap();
        let v = seller_utility(&m, &prices, &prof, 3).unwrap();
        assert!(close(v, 5.0 * (1.0 - 1.0 / 30.0) / 30.0 - 0.01, 1e-14));
    }
}
