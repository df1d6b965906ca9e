use std::path::Path;

use ggd::io::vectors;
use ggd_core::{cosine, EmbeddingTable};
use proptest::prelude::*;

fn table_strategy() -> impl Strategy<Value = (usize, Vec<Vec<f64>>)> {
    (2usize..12).prop_flat_map(|dim| {
        let row = prop::collection::vec(-50.0f64..50.0, dim)
            .prop_filter("non-zero", |r| r.iter().map(|v| v * v).sum::<f64>() > 1e-6);
        (Just(dim), prop::collection::vec(row, 2..20))
    })
}

proptest! {
    #[test]
    fn saved_tables_keep_cosines((dim, rows) in table_strategy()) {
        let words: Vec<String> = (0..rows.len()).map(|i| format!("w{i}")).collect();
        let table = EmbeddingTable::from_rows(dim, words.iter().zip(&rows).map(|(w, r)| (w.as_str(), r.as_slice()))).unwrap();
        let mut buf = Vec::new();
        vectors::write(&table, &mut buf).unwrap();
        let back = vectors::read(&buf[..], Path::new("mem"), &Default::default()).unwrap().table;
        prop_assert_eq!(back.len(), table.len());
        for i in 0..words.len() {
            for j in 0..words.len() {
                let a = cosine(table.vector(&words[i]).unwrap(), table.vector(&words[j]).unwrap()).unwrap();
                let b = cosine(back.vector(&words[i]).unwrap(), back.vector(&words[j]).unwrap()).unwrap();
                prop_assert!((a - b).abs() <= 1e-5, "{} vs {}", a, b);
            }
        }
    }
}
