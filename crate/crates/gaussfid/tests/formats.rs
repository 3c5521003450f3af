use gaussfid::io::{parse_channel, parse_probes, sweep_json, write_probes, write_sweep_csv, channel_json};
use gaussfid_core::scenarios::{amplifier_sweep, symmetric_contour_grid};
use gaussfid_core::tomography::simulate_probe_records;
use gaussfid_core::{CovarianceMatrix, GainMatrix, GaussianChannel, Quadratures};
use num_complex::Complex64;

fn sample() -> GaussianChannel {
    GaussianChannel::new(
        GainMatrix::new(0.8, -0.1, 0.2, 0.9),
        Quadratures::new(0.25, -0.5),
        CovarianceMatrix::new(0.4, 0.3, 0.05),
    )
}

#[test]
fn channel_json_round_trip() {
    let ch = sample();
    let text = serde_json::to_string(&channel_json(&ch, None)).unwrap();
    assert_eq!(parse_channel(&text).unwrap(), ch);
}

#[test]
fn noise_mean_defaults_to_zero() {
    let ch = parse_channel(r#"{"gain":[1,0,0,1],"noise_cov":{"sxx":0,"spp":0,"cxp":0}}"#).unwrap();
    assert_eq!(ch, GaussianChannel::identity());
}

#[test]
fn probe_csv_round_trip() {
    let alphas = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.5), Complex64::new(-0.3, 1.0)];
    let records = simulate_probe_records(&sample(), &alphas);
    let mut buf = Vec::new();
    write_probes(&records, &mut buf).unwrap();
    assert_eq!(parse_probes(buf.as_slice()).unwrap(), records);
}

#[test]
fn probe_rows_are_validated() {
    let text = "alpha_re,alpha_im,mean_x,mean_p,var_x,var_p,cov_xp\n0,0,0,0,-1,0.5,0\n";
    assert!(parse_probes(text.as_bytes()).is_err());
    let text = "alpha_re,alpha_im,mean_x,mean_p,var_x,var_p\n0,0,0,0,1,0.5\n";
    assert!(parse_probes(text.as_bytes()).is_err());
}

#[test]
fn sweep_csv_is_long_form() {
    let sweep = amplifier_sweep(1.0, 0.5, &[1.0, 2.0]).unwrap();
    let mut buf = Vec::new();
    write_sweep_csv(&sweep, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, vec!["epsilon,fq".to_string(), "1,1".into(), format!("2,{}", sweep.fq[1])]);
}

#[test]
fn sweep_json_nests_grids() {
    let grid = symmetric_contour_grid(&[0.0, 0.5, 1.0], &[0.0, 1.0]).unwrap();
    let v = sweep_json(&grid);
    assert_eq!(v["fq"].as_array().unwrap().len(), 3);
    assert_eq!(v["fq"][0].as_array().unwrap().len(), 2);
    assert_eq!(v["axes"][1]["label"], "excess_variance");
    assert!(v["contour"].as_array().is_some_and(|c| !c.is_empty()));
}
