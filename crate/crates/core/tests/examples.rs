macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(value_and_weight);
example!(perceptual_distribution);
example!(pu_snr);
example!(pu_rate);
example!(outage);
example!(oracle_cross_check);
example!(channel_simulation);
example!(scenario_sweep);
