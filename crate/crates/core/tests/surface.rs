use asi_bench::fixture::table_iii;
use asi_bench::surface::{
    parse_csv, query, surface_grid, Resolution, SurfaceGrid, DEFAULT_CV_RANGE, DEFAULT_MEAN_RANGE,
    DEFAULT_RESOLUTION,
};

#[test]
fn query_reproduces_every_published_row() {
    let rows = table_iii();
    assert_eq!(rows.len(), 75);
    for r in &rows {
        let a = query(r.mean, r.cv).unwrap();
        assert!((a - r.asi).abs() <= 5e-4, "{}: {a} vs {}", r.row_id, r.asi);
    }
}

#[test]
fn default_grid_is_monotone_and_unmasked_except_origin() {
    let g = surface_grid(DEFAULT_MEAN_RANGE, DEFAULT_CV_RANGE, DEFAULT_RESOLUTION).unwrap();
    assert_eq!(g.mean_axis.len(), 101);
    assert_eq!(g.cv_axis.len(), 51);
    assert_eq!(g.masked_count(), 1);
    assert_eq!(g.value(0, 0), None);
    for i in 0..g.cv_axis.len() {
        for j in 0..g.mean_axis.len() {
            let Some(v) = g.value(i, j) else { continue };
            if let Some(right) = g.values[i].get(j + 1).copied().flatten() {
                assert!(right >= v, "not increasing along mean at ({i},{j})");
            }
            if let Some(down) = g.values.get(i + 1).and_then(|r| r[j]) {
                assert!(down <= v, "not decreasing along cv at ({i},{j})");
            }
        }
    }
    // the cv = 0 row is 1 wherever defined
    assert!(g.values[0][1..].iter().all(|v| *v == Some(1.0)));
}

#[test]
fn masking_only_where_sum_vanishes() {
    let g = surface_grid((0.0, 1.0), (0.0, 1.0), Resolution { mean: 5, cv: 7 }).unwrap();
    assert_eq!(g.masked_count(), 1);
    let g = surface_grid((1.0, 2.0), (0.0, 1.0), Resolution { mean: 5, cv: 7 }).unwrap();
    assert_eq!(g.masked_count(), 0);
}

#[test]
fn serialized_forms_round_trip_exactly() {
    let g = surface_grid((0.0, 100.0), (0.0, 7.0), Resolution { mean: 17, cv: 13 }).unwrap();
    let back = SurfaceGrid::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);

    let triples = parse_csv(&g.to_csv()).unwrap();
    assert_eq!(triples.len(), 17 * 13 - 1);
    for (m, c, a) in triples {
        assert_eq!(query(m, c), Some(a));
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(parse_csv("x,y,z\n1,2,3\n").is_err());
    assert!(parse_csv("mean,cv,asi\n1,2\n").is_err());
    assert!(SurfaceGrid::from_json(r#"{"mean_axis":[0,1],"cv_axis":[0],"values":[[1.0]]}"#).is_err());
    assert!(SurfaceGrid::from_json("{").is_err());
}
