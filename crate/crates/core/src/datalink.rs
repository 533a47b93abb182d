//! Operating-state data links.
//!
//! A data link joins the physical side of the grid (device snapshots with
//! electrical attributes) with the cyber side (network health indicators
//! per device IP) over shared sampling windows. Three indicators summarize
//! the network state:
//!
//! * delay ratio: mean absolute deviation of per-link packet loss shares
//!   from their alarm thresholds, scaled by 100;
//! * loss ratio: mean packet transfer latency, scaled by 100;
//! * threat degree: mean absolute deviation of alarm threat scores around
//!   their group mean, scaled by 100.
//!
//! [`fuse_links`] performs the windowed inner join between the two sides
//! through an index table mapping grid components to IPs, and
//! [`compress_repeats`] collapses runs of near-identical records so bursts
//! of repeated telemetry do not dominate downstream statistics.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Error, Result};

/// One sampled state of a physical device.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalSnapshot {
    pub device_id: String,
    pub timestamp: f64,
    /// Electrical attributes (voltages, currents, power, switch states).
    pub attributes: Vec<f64>,
}

/// Packet counters for one monitored link over a reporting interval.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkPacketStats {
    pub link_id: String,
    pub packets_sent: u64,
    pub packets_lost: u64,
    /// Alarm threshold for the loss share, in [0, 1].
    pub loss_threshold: f64,
}

/// Send/receive times of one tracked packet.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketTiming {
    pub packet_id: String,
    pub send_time: f64,
    pub receive_time: f64,
}

/// Alarm threat scores raised by one source IP.
#[derive(Debug, Clone, PartialEq)]
pub struct AlarmGroup {
    pub ip: String,
    pub threat_degrees: Vec<f64>,
}

/// Network indicators for one IP at one sampling instant.
#[derive(Debug, Clone, PartialEq)]
pub struct CyberSnapshot {
    pub timestamp: f64,
    pub ip: String,
    pub delay_ratio: f64,
    pub loss_ratio: f64,
    pub threat_degree: f64,
}

/// One row of the component/IP index.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexRow {
    pub area: String,
    pub line: String,
    pub component_id: String,
    pub ip: String,
}

/// Index mapping grid components to device IPs.
///
/// Component ids and IPs are each unique across rows, so the mapping
/// between the physical and cyber sides is one-to-one.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexTable {
    rows: Vec<IndexRow>,
}

impl IndexTable {
    /// Builds the table, rejecting duplicate component ids or IPs.
    pub fn new(rows: Vec<IndexRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("index table"));
        }
        let mut components = BTreeMap::new();
        let mut ips = BTreeMap::new();
        for row in &rows {
            if components.insert(row.component_id.clone(), ()).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "duplicate component_id {:?} in index table",
                    row.component_id
                )));
            }
            if ips.insert(row.ip.clone(), ()).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "duplicate ip {:?} in index table",
                    row.ip
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[IndexRow] {
        &self.rows
    }

    fn contains_component(&self, id: &str) -> bool {
        self.rows.iter().any(|r| r.component_id == id)
    }

    fn contains_ip(&self, ip: &str) -> bool {
        self.rows.iter().any(|r| r.ip == ip)
    }
}

/// Sampling window geometry for fusion.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowConfig {
    /// Window period T, > 0.
    pub period: f64,
    /// Kept fraction at the tail of each window, in (0, 1].
    pub alpha: f64,
    /// Component-wise tolerance used by [`compress_repeats`].
    pub dedup_tolerance: f64,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self {
            period: 1.0,
            alpha: 1.0,
            dedup_tolerance: 0.0,
        }
    }
}

impl WindowConfig {
    fn validate(&self) -> Result<()> {
        if !self.period.is_finite() || self.period <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "window period must be positive and finite, got {}",
                self.period
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "window alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.dedup_tolerance < 0.0 || self.dedup_tolerance.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "dedup tolerance must be >= 0, got {}",
                self.dedup_tolerance
            )));
        }
        Ok(())
    }

    /// Window index for a timestamp.
    fn window_of(&self, t: f64) -> i64 {
        (t / self.period).floor() as i64
    }

    /// A timestamp is sampled iff it falls in the trailing `alpha` share
    /// of its window.
    fn is_sampled(&self, t: f64) -> bool {
        let offset = t - self.period * (t / self.period).floor();
        offset >= self.period - self.alpha * self.period
    }
}

/// One fused physical/cyber record.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FusedRecord {
    pub timestamp: f64,
    pub area: String,
    pub line: String,
    pub component_id: String,
    pub ip: String,
    /// Physical attributes followed by the three network indicators.
    pub features: Vec<f64>,
    /// How many raw records this row stands for (>= 1).
    pub repeat_count: u32,
    /// Optional state label, used by generated scenarios and training data.
    pub label: Option<u32>,
}

/// A fused operating-state data link: records sorted by timestamp with a
/// fixed feature width.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StateDataLink {
    pub records: Vec<FusedRecord>,
}

impl StateDataLink {
    /// Number of features per record, 0 when empty.
    pub fn feature_width(&self) -> usize {
        self.records.first().map_or(0, |r| r.features.len())
    }

    /// Checks the sortedness and uniform-width invariants.
    pub fn validate(&self) -> Result<()> {
        let width = self.feature_width();
        let mut prev = f64::NEG_INFINITY;
        for record in &self.records {
            if record.features.len() != width {
                return Err(Error::ShapeMismatch {
                    what: "fused record features",
                    expected: width,
                    got: record.features.len(),
                });
            }
            if record.timestamp < prev {
                return Err(Error::InvalidConfig(
                    "data link records are not sorted by timestamp".into(),
                ));
            }
            prev = record.timestamp;
        }
        Ok(())
    }

    /// Sum of repeat counts, i.e. the raw record count represented.
    pub fn total_weight(&self) -> u64 {
        self.records.iter().map(|r| u64::from(r.repeat_count)).sum()
    }
}

/// Counts of rows discarded during fusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FuseReport {
    /// Rows outside the sampled tail of their window.
    pub out_of_window: usize,
    /// Windowed physical rows left without a cyber partner.
    pub unpaired_physical: usize,
    /// Windowed cyber rows left without a physical partner.
    pub unpaired_cyber: usize,
}

/// Delay ratio over a set of link packet counters.
///
/// `(sum_k |lost_k / sent_k - threshold_k|) / n * 100`.
pub fn compute_delay_ratio(stats: &[LinkPacketStats]) -> Result<f64> {
    if stats.is_empty() {
        return Err(Error::EmptyInput("link packet statistics"));
    }
    let mut total = 0.0;
    for s in stats {
        if s.packets_sent == 0 {
            return Err(Error::InvalidStats(format!(
                "link {:?} reports zero packets sent",
                s.link_id
            )));
        }
        if s.packets_lost > s.packets_sent {
            return Err(Error::InvalidStats(format!(
                "link {:?} reports more packets lost ({}) than sent ({})",
                s.link_id, s.packets_lost, s.packets_sent
            )));
        }
        if !(0.0..=1.0).contains(&s.loss_threshold) {
            return Err(Error::InvalidStats(format!(
                "link {:?} loss threshold {} outside [0, 1]",
                s.link_id, s.loss_threshold
            )));
        }
        let share = s.packets_lost as f64 / s.packets_sent as f64;
        total += (share - s.loss_threshold).abs();
    }
    Ok(total / stats.len() as f64 * 100.0)
}

/// Loss ratio over a set of packet timings: mean latency scaled by 100.
///
/// `(sum_k (receive_k - send_k)) / m * 100`.
pub fn compute_loss_ratio(timings: &[PacketTiming]) -> Result<f64> {
    if timings.is_empty() {
        return Err(Error::EmptyInput("packet timings"));
    }
    let mut total = 0.0;
    for t in timings {
        if t.receive_time < t.send_time {
            return Err(Error::InvalidTiming(format!(
                "packet {:?} received at {} before send at {}",
                t.packet_id, t.receive_time, t.send_time
            )));
        }
        total += t.receive_time - t.send_time;
    }
    Ok(total / timings.len() as f64 * 100.0)
}

/// Threat degree of one alarm group: mean absolute deviation of the
/// group's threat scores around their mean, scaled by 100.
pub fn compute_threat_degree(group: &AlarmGroup) -> Result<f64> {
    if group.threat_degrees.is_empty() {
        return Err(Error::EmptyInput("alarm group"));
    }
    let n = group.threat_degrees.len() as f64;
    let mean = group.threat_degrees.iter().sum::<f64>() / n;
    let mad = group
        .threat_degrees
        .iter()
        .map(|d| (d - mean).abs())
        .sum::<f64>()
        / n;
    Ok(mad * 100.0)
}

/// Joins physical snapshots with cyber snapshots over sampling windows.
///
/// Rows are kept only if they fall in the trailing `alpha` share of their
/// window. Within each (window, index row) group, physical and cyber rows
/// are paired in timestamp order; rows beyond the shorter side are dropped
/// and counted in the report. Devices absent from the index table are an
/// error: silent partial joins would corrupt every downstream stage.
pub fn fuse_links(
    physical: &[PhysicalSnapshot],
    cyber: &[CyberSnapshot],
    index: &IndexTable,
    window: &WindowConfig,
) -> Result<(StateDataLink, FuseReport)> {
    window.validate()?;
    if physical.is_empty() {
        return Err(Error::EmptyInput("physical snapshots"));
    }
    if cyber.is_empty() {
        return Err(Error::EmptyInput("cyber snapshots"));
    }

    let width = physical[0].attributes.len();
    for snap in physical {
        if snap.attributes.len() != width {
            return Err(Error::ShapeMismatch {
                what: "physical attributes",
                expected: width,
                got: snap.attributes.len(),
            });
        }
    }

    let mut bad_components: Vec<String> = Vec::new();
    for snap in physical {
        if !index.contains_component(&snap.device_id) && !bad_components.contains(&snap.device_id)
        {
            bad_components.push(snap.device_id.clone());
        }
    }
    let mut bad_ips: Vec<String> = Vec::new();
    for snap in cyber {
        if !index.contains_ip(&snap.ip) && !bad_ips.contains(&snap.ip) {
            bad_ips.push(snap.ip.clone());
        }
    }
    if !bad_components.is_empty() || !bad_ips.is_empty() {
        bad_components.sort();
        bad_ips.sort();
        return Err(Error::UnmappedDevices {
            components: bad_components,
            ips: bad_ips,
        });
    }

    let mut report = FuseReport::default();

    // Group sampled rows by (component or ip, window), keeping timestamp
    // order within each group. Input order is preserved by the stable
    // grouping, then each group is sorted by timestamp for pairing.
    let mut phys_groups: BTreeMap<(&str, i64), Vec<&PhysicalSnapshot>> = BTreeMap::new();
    for snap in physical {
        if !window.is_sampled(snap.timestamp) {
            report.out_of_window += 1;
            continue;
        }
        phys_groups
            .entry((snap.device_id.as_str(), window.window_of(snap.timestamp)))
            .or_default()
            .push(snap);
    }
    let mut cyber_groups: BTreeMap<(&str, i64), Vec<&CyberSnapshot>> = BTreeMap::new();
    for snap in cyber {
        if !window.is_sampled(snap.timestamp) {
            report.out_of_window += 1;
            continue;
        }
        cyber_groups
            .entry((snap.ip.as_str(), window.window_of(snap.timestamp)))
            .or_default()
            .push(snap);
    }
    for group in phys_groups.values_mut() {
        group.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp));
    }
    for group in cyber_groups.values_mut() {
        group.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp));
    }

    let mut records = Vec::new();
    for row in index.rows() {
        // Windows present on either side for this component/IP pair.
        let mut windows: Vec<i64> = Vec::new();
        for (&(comp, w), _) in phys_groups.range((row.component_id.as_str(), i64::MIN)..) {
            if comp != row.component_id {
                break;
            }
            windows.push(w);
        }
        for (&(ip, w), _) in cyber_groups.range((row.ip.as_str(), i64::MIN)..) {
            if ip != row.ip {
                break;
            }
            if !windows.contains(&w) {
                windows.push(w);
            }
        }
        windows.sort_unstable();

        for w in windows {
            let empty_p: Vec<&PhysicalSnapshot> = Vec::new();
            let empty_c: Vec<&CyberSnapshot> = Vec::new();
            let phys = phys_groups
                .get(&(row.component_id.as_str(), w))
                .unwrap_or(&empty_p);
            let cyb = cyber_groups.get(&(row.ip.as_str(), w)).unwrap_or(&empty_c);
            let paired = phys.len().min(cyb.len());
            report.unpaired_physical += phys.len() - paired;
            report.unpaired_cyber += cyb.len() - paired;
            for i in 0..paired {
                let p = phys[i];
                let c = cyb[i];
                let mut features = Vec::with_capacity(width + 3);
                features.extend_from_slice(&p.attributes);
                features.push(c.delay_ratio);
                features.push(c.loss_ratio);
                features.push(c.threat_degree);
                records.push(FusedRecord {
                    timestamp: p.timestamp,
                    area: row.area.clone(),
                    line: row.line.clone(),
                    component_id: row.component_id.clone(),
                    ip: row.ip.clone(),
                    features,
                    repeat_count: 1,
                    label: None,
                });
            }
        }
    }

    records.sort_by(|a, b| {
        a.timestamp
            .total_cmp(&b.timestamp)
            .then_with(|| a.component_id.cmp(&b.component_id))
            .then_with(|| a.ip.cmp(&b.ip))
    });

    Ok((StateDataLink { records }, report))
}

/// Collapses runs of repeated records.
///
/// A run starts at an anchor record and absorbs following records whose
/// feature vectors differ from the anchor component-wise by at most
/// `tolerance`; the collapsed record keeps the anchor's fields and the
/// summed repeat counts. Comparing against the anchor (not the previous
/// record) makes the operation idempotent: consecutive output records
/// always differ by more than `tolerance`.
pub fn compress_repeats(link: &StateDataLink, tolerance: f64) -> StateDataLink {
    let mut records: Vec<FusedRecord> = Vec::new();
    for record in &link.records {
        if let Some(last) = records.last_mut() {
            if within_tolerance(&last.features, &record.features, tolerance) {
                last.repeat_count += record.repeat_count;
                continue;
            }
        }
        records.push(record.clone());
    }
    StateDataLink { records }
}

fn within_tolerance(a: &[f64], b: &[f64], tolerance: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= tolerance)
}
