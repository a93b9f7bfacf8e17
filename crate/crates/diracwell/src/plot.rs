//! Plain-text (gnuplot) plot scripts for the sweep tables.
//!
//! Scripts reference the CSV by file name only, so table and script can be
//! moved together; output is byte-deterministic for identical inputs.

/// The sweep table a script renders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    WidthSweep,
    PhaseSweep,
    EnergySweep,
    Packet,
    CompareNonrel,
    ThresholdTable,
}

/// Builds the script text for one table. `csv_name` must be a bare file
/// name (relative path), not an absolute one.
pub fn plot_script(kind: PlotKind, csv_name: &str) -> String {
    let mut s = String::new();
    s.push_str("# generated by diracwell; render with: gnuplot <this file>\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set grid\n");
    match kind {
        PlotKind::WidthSweep => {
            s.push_str("set xlabel \"k'a\"\n");
            s.push_str("set ylabel 'group delay (tau_0) and transmission'\n");
            s.push_str(&format!(
                "plot '{csv_name}' using 1:5 with lines title 'tau_rel', \\\n     '{csv_name}' using 1:3 with lines dashtype 2 title 'T'\n"
            ));
        }
        PlotKind::PhaseSweep => {
            s.push_str("set xlabel \"k'a\"\n");
            s.push_str("set ylabel 'phase shift (rad)'\n");
            s.push_str(&format!(
                "plot '{csv_name}' using 1:4 with lines title 'phi'\n"
            ));
        }
        PlotKind::EnergySweep => {
            s.push_str("set xlabel 'alpha'\n");
            s.push_str("set ylabel 'group delay (tau_0)'\n");
            s.push_str(&format!(
                "plot '{csv_name}' using 1:4 with lines title 'tau_rel', \\\n     '{csv_name}' using 1:5 with lines dashtype 2 title 'asymptote'\n"
            ));
        }
        PlotKind::Packet => {
            s.push_str("set xlabel \"k'a\"\n");
            s.push_str("set ylabel 'group delay (tau_0)'\n");
            s.push_str(&format!(
                "plot '{csv_name}' using 1:2 with lines title 'stationary phase', \\\n     '{csv_name}' using 1:3 with points pointtype 7 title 'wave packet'\n"
            ));
        }
        PlotKind::CompareNonrel => {
            s.push_str("set xlabel \"k'a\"\n");
            s.push_str("set ylabel 'group delay (tau_0)'\n");
            s.push_str(&format!(
                "plot '{csv_name}' using 1:2 with lines title 'relativistic', \\\n     '{csv_name}' using 1:3 with lines dashtype 2 title 'non-relativistic'\n"
            ));
        }
        PlotKind::ThresholdTable => {
            s.push_str("set xlabel 'beta'\n");
            s.push_str("set ylabel 'E_t (mu c^2)'\n");
            s.push_str(&format!(
                "plot '{csv_name}' using 1:2 with lines title 'E_t'\n"
            ));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scripts_are_deterministic_and_relative() {
        let a = plot_script(PlotKind::WidthSweep, "width-sweep.csv");
        let b = plot_script(PlotKind::WidthSweep, "width-sweep.csv");
        assert_eq!(a, b);
        assert!(a.contains("'width-sweep.csv'"));
        assert!(!a.contains('/'));
    }

    #[test]
    fn each_kind_references_the_csv() {
        for kind in [
            PlotKind::WidthSweep,
            PlotKind::PhaseSweep,
            PlotKind::EnergySweep,
            PlotKind::Packet,
            PlotKind::CompareNonrel,
            PlotKind::ThresholdTable,
        ] {
            let s = plot_script(kind, "table.csv");
            assert!(s.contains("'table.csv'"));
            assert!(s.starts_with('#'));
        }
    }
}
