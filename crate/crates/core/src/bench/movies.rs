use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceSpec, KnapsackSpec, ObjectiveSpec};
use crate::objectives::MatroidSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MovieRow {
    pub id: u64,
    pub rating: f64,
    pub year: i32,
    pub genres: Vec<String>,
    pub features: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MovieConfig {
    pub lambda: f64,
    pub genre_cap: usize,
    pub total_cap: usize,
    pub rating_budget: f64,
    pub year_budgets: (f64, f64),
    pub use_third_knapsack: bool,
}

impl Default for MovieConfig {
    fn default() -> Self {
        Self {
            lambda: 4.0,
            genre_cap: 2,
            total_cap: 10,
            rating_budget: 20.0,
            year_budgets: (30.0, 30.0),
            use_third_knapsack: false,
        }
    }
}

fn ingest(row: usize, message: impl Into<String>) -> Error {
    Error::Ingest {
        row,
        message: message.into(),
    }
}

/// Reads `id,rating,year,genres,f1..fd`. Genres are `;`-separated. Row
/// numbers in errors count data rows from 1.
pub fn read_movies(reader: impl Read) -> Result<Vec<MovieRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let expect = ["id", "rating", "year", "genres"];
    if headers.len() < 4 || headers.iter().take(4).ne(expect) {
        return Err(ingest(0, "header must start with id,rating,year,genres"));
    }
    let dim = headers.len() - 4;
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| ingest(row, e.to_string()))?;
        if record.len() != dim + 4 {
            return Err(ingest(
                row,
                format!("expected {} fields, got {}", dim + 4, record.len()),
            ));
        }
        let id = record[0]
            .parse()
            .map_err(|_| ingest(row, format!("bad id {:?}", &record[0])))?;
        let rating: f64 = record[1]
            .parse()
            .map_err(|_| ingest(row, format!("bad rating {:?}", &record[1])))?;
        if !(0.0..=10.0).contains(&rating) {
            return Err(ingest(row, format!("rating {rating} outside [0, 10]")));
        }
        let year = record[2]
            .parse()
            .map_err(|_| ingest(row, format!("bad year {:?}", &record[2])))?;
        let genres = record[3]
            .split(';')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(String::from)
            .collect();
        let features = record
            .iter()
            .skip(4)
            .map(|f| match f.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(ingest(row, format!("bad feature {f:?}"))),
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(MovieRow {
            id,
            rating,
            year,
            genres,
            features,
        });
    }
    Ok(rows)
}

pub fn write_movies(rows: &[MovieRow], writer: impl Write) -> Result<()> {
    let dim = rows.first().map_or(0, |r| r.features.len());
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec![
        "id".to_string(),
        "rating".into(),
        "year".into(),
        "genres".into(),
    ];
    header.extend((1..=dim).map(|i| format!("f{i}")));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.id.to_string(),
            r.rating.to_string(),
            r.year.to_string(),
            r.genres.join(";"),
        ];
        rec.extend(r.features.iter().map(|f| f.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

const GENRES: [&str; 8] = [
    "Action",
    "Comedy",
    "Drama",
    "Horror",
    "Romance",
    "Thriller",
    "Animation",
    "Documentary",
];

/// Random rows with the movie schema: ratings on a 0.1 grid, years
/// 1975–2015, one or two genres, features in `[0, 1)^dim`.
pub fn synthetic_movies(rows: usize, dim: usize, seed: u64) -> Vec<MovieRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rows)
        .map(|i| {
            let rating = f64::from(rng.gen_range(0..=100u32)) / 10.0;
            let year = rng.gen_range(1975..=2015);
            let count = rng.gen_range(1..=2);
            let mut genres: Vec<String> = GENRES
                .choose_multiple(&mut rng, count)
                .map(|g| g.to_string())
                .collect();
            genres.sort();
            let features = (0..dim).map(|_| rng.gen::<f64>()).collect();
            MovieRow {
                id: i as u64 + 1,
                rating,
                year,
                genres,
                features,
            }
        })
        .collect()
}

/// Diversity objective, a total cap, per-genre caps and the rating and
/// release-year knapsacks.
///
/// When every movie has at most one genre the genre caps form a single
/// partition matroid. Otherwise each genre gets its own matroid over the
/// movies carrying it.
pub fn movie_spec(rows: &[MovieRow], cfg: &MovieConfig) -> Result<InstanceSpec> {
    if rows.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let n = rows.len();
    let mut by_genre: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for g in &r.genres {
            let members = by_genre.entry(g.as_str()).or_default();
            if members.last() != Some(&i) {
                members.push(i);
            }
        }
    }
    let mut matroids = vec![MatroidSpec::Uniform { cap: cfg.total_cap }];
    let disjoint = rows.iter().all(|r| r.genres.len() <= 1);
    if disjoint && !by_genre.is_empty() {
        matroids.push(MatroidSpec::Partition {
            caps: vec![cfg.genre_cap; by_genre.len()],
            parts: by_genre.into_values().collect(),
        });
    } else {
        matroids.extend(by_genre.into_values().map(|part| MatroidSpec::Partition {
            parts: vec![part],
            caps: vec![cfg.genre_cap],
        }));
    }
    let mut costs = vec![
        rows.iter().map(|r| 10.0 - r.rating).collect::<Vec<f64>>(),
        rows.iter()
            .map(|r| f64::from((1995 - r.year).abs()))
            .collect(),
    ];
    let mut budgets = vec![cfg.rating_budget, cfg.year_budgets.0];
    if cfg.use_third_knapsack {
        costs.push(
            rows.iter()
                .map(|r| f64::from((1997 - r.year).abs()))
                .collect(),
        );
        budgets.push(cfg.year_budgets.1);
    }
    Ok(InstanceSpec {
        n,
        objective: ObjectiveSpec::Diversity {
            similarity: None,
            features: Some(rows.iter().map(|r| r.features.clone()).collect()),
            lambda: Some(cfg.lambda),
        },
        matroids,
        knapsacks: KnapsackSpec { costs, budgets },
    })
}

pub fn build_movie_instance(rows: &[MovieRow], cfg: &MovieConfig) -> Result<Instance> {
    movie_spec(rows, cfg)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: u64, rating: f64, year: i32, genres: &[&str]) -> MovieRow {
        MovieRow {
            id,
            rating,
            year,
            genres: genres.iter().map(|g| g.to_string()).collect(),
            features: vec![id as f64, 0.0],
        }
    }

    #[test]
    fn knapsack_costs() {
        let rows = [row(1, 10.0, 1995, &["A"]), row(2, 4.0, 1990, &["B"])];
        let cfg = MovieConfig {
            use_third_knapsack: true,
            ..Default::default()
        };
        let inst = build_movie_instance(&rows, &cfg).unwrap();
        let k = inst.knapsack();
        assert_eq!(k.cost(0, 0), 0.0);
        assert_eq!(k.cost(1, 0), 0.0);
        assert_eq!(k.cost(0, 1), 6.0 / 20.0);
        assert_eq!(k.cost(1, 1), 5.0 / 30.0);
        assert!((k.cost(2, 1) - 0.2333).abs() < 1e-4);
        assert_eq!(inst.m(), 3);
    }

    #[test]
    fn genre_caps_disjoint_and_overlapping() {
        let disjoint: Vec<MovieRow> = (0..5).map(|i| row(i, 9.0, 1995, &["A"])).collect();
        let spec = movie_spec(&disjoint, &MovieConfig::default()).unwrap();
        assert_eq!(spec.matroids.len(), 2);
        let inst = spec.build().unwrap();
        assert!(inst.is_feasible(&[0, 1]));
        assert!(!inst.is_feasible(&[0, 1, 2]));

        let overlapping = [
            row(1, 9.0, 1995, &["A", "B"]),
            row(2, 9.0, 1995, &["A"]),
            row(3, 9.0, 1995, &["B"]),
            row(4, 9.0, 1995, &["B"]),
        ];
        let spec = movie_spec(&overlapping, &MovieConfig::default()).unwrap();
        assert_eq!(spec.matroids.len(), 3);
        let inst = spec.build().unwrap();
        assert!(inst.is_feasible(&[0, 1]));
        assert!(inst.is_feasible(&[1, 2, 3]));
        assert!(!inst.is_feasible(&[0, 2, 3]));
    }

    #[test]
    fn csv_round_trip() {
        let rows = synthetic_movies(30, 5, 2);
        let mut buf = Vec::new();
        write_movies(&rows, &mut buf).unwrap();
        assert_eq!(read_movies(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn malformed_rows_are_named() {
        let text = "id,rating,year,genres,f1\n1,5,1990,A,0.1\n2,abc,1990,A,0.2\n";
        match read_movies(text.as_bytes()) {
            Err(Error::Ingest { row, .. }) => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
        let text = "id,rating,year,genres,f1\n1,11,1990,A,0.1\n";
        assert!(matches!(
            read_movies(text.as_bytes()),
            Err(Error::Ingest { row: 1, .. })
        ));
        let text = "id,rating,year,genres,f1\n1,5,1990,A\n";
        assert!(matches!(
            read_movies(text.as_bytes()),
            Err(Error::Ingest { row: 1, .. })
        ));
    }

    #[test]
    fn synthetic_instance_builds() {
        let rows = synthetic_movies(300, 8, 1);
        assert_eq!(rows.len(), 300);
        let inst = build_movie_instance(&rows, &MovieConfig::default()).unwrap();
        assert_eq!(inst.n(), 300);
        assert!(inst.is_feasible(&[]));
        assert!(!inst.feasible_singletons().is_empty());
    }

    #[test]
    fn empty_rows_rejected() {
        assert!(matches!(
            movie_spec(&[], &MovieConfig::default()),
            Err(Error::EmptyInstance)
        ));
    }
}
