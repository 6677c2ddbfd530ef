//! Following the orbit of 8 under rho with checkpoints, then resuming.
//!
//!     cargo run --release --example occ_campaign [-- steps]

use congruential::campaign::{occ_campaign, CampaignConfig};

fn main() {
    let steps: u64 = std::env::args().nth(1).map_or(200_000, |s| s.parse().expect("steps"));
    let dir = std::env::temp_dir().join(format!("occ-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("occ.ckpt");

    let mut config = CampaignConfig {
        step_bound: Some(steps / 2),
        checkpoint_every: steps / 10,
        checkpoint_path: Some(path.clone()),
        ..CampaignConfig::default()
    };
    let (first, _) = occ_campaign(&config).unwrap();
    println!("first leg: {} steps, {} checkpoints", first.steps, first.checkpoints_written);

    config.step_bound = Some(steps);
    config.resume = true;
    let (report, state) = occ_campaign(&config).unwrap();
    println!(
        "resumed at {} and ran to {}: {:?}; value has {} bits (max {} at step {})",
        report.resumed_from_step, report.steps, report.outcome, report.last_value_bits, report.max_bits, report.max_bits_pos
    );
    println!(
        "local minima {}, local maxima {}; the lambda twin was checked {} times",
        report.local_minima, report.local_maxima, report.linkage_checks
    );
    println!("checkpoint:\n{}", state.to_text().lines().take(3).collect::<Vec<_>>().join("\n"));
    std::fs::remove_dir_all(&dir).ok();
}
