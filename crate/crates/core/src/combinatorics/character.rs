use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::{klyachko_count, standard_tableaux, Partition};

type Memo = RwLock<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `χ^λ(μ)` by the Murnaghan-Nakayama rule, removing rim hooks of length
/// `μ_1, μ_2, …` in turn. Rim hooks are read off the beta-set of `λ`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.r(), mu.r(), "shapes of different size");
    mn(lambda.parts(), mu.parts())
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo().read().expect("memo lock").get(&key) {
        return v;
    }
    let k = mu[0];
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let n = next.len();
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (n - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, &mu[1..]);
    }
    memo().write().expect("memo lock").insert(key, total);
    total
}

/// Rows indexed by `λ`, columns by class `μ`, both in [`Partition::all`]
/// order.
pub fn character_table(r: usize) -> (Vec<Partition>, Vec<Vec<i64>>) {
    let shapes = Partition::all(r);
    let table = shapes
        .iter()
        .map(|l| shapes.iter().map(|m| mn_character(l, m)).collect())
        .collect();
    (shapes, table)
}

pub fn character_table_csv(r: usize) -> String {
    let (shapes, table) = character_table(r);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["lambda".to_string()];
    header.extend(shapes.iter().map(Partition::csv_label));
    w.write_record(&header).expect("in-memory write");
    for (lambda, row) in shapes.iter().zip(&table) {
        let mut rec = vec![lambda.csv_label()];
        rec.extend(row.iter().map(i64::to_string));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

/// One row per standard tableau: shape, rows, descent set and major index,
/// plus a per-shape count of tableaux with `maj ≡ 1 (mod r)`.
pub fn syt_census_csv(r: usize) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["shape", "tableau", "descents", "maj", "klyachko_count"])
        .expect("in-memory write");
    for lambda in Partition::all(r) {
        let count = klyachko_count(&lambda, r).to_string();
        for t in standard_tableaux(&lambda) {
            let rows: Vec<String> = t
                .rows()
                .iter()
                .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            let desc: Vec<String> = t.descents().iter().map(usize::to_string).collect();
            w.write_record([
                lambda.csv_label(),
                rows.join("/"),
                desc.join(" "),
                t.major_index().to_string(),
                count.clone(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sigma3_table() {
        let (_, t) = character_table(3);
        assert_eq!(t, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);
    }

    #[test]
    fn degrees_are_tableau_counts() {
        for r in 1..=7 {
            for l in Partition::all(r) {
                let deg = mn_character(&l, &Partition::column(r));
                assert_eq!(deg as usize, standard_tableaux(&l).len());
            }
        }
        assert_eq!(mn_character(&part(&[2, 2]), &part(&[2, 2])), 2);
        assert_eq!(mn_character(&part(&[3, 1]), &part(&[4])), -1);
    }

    #[test]
    fn csv_exports() {
        let table = character_table_csv(3);
        assert_eq!(table.lines().next(), Some("lambda,3,\"2,1\",\"1,1,1\""));
        let census = syt_census_csv(3);
        assert_eq!(census.lines().count(), 1 + 4);
    }
}
