//! Windowed graph streams with hierarchical binary summation.
//!
//! Level-0 windows close after `m` events (fixed-m) or at multiples of `t`
//! seconds (fixed-t). Each pair of consecutive level-`s` windows sums to one
//! level-`s+1` window, so a level-`s` window spans `2^s` level-0 windows.
//! Every level keeps its most recent windows in a ring buffer.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::array::AssocArray;
use crate::error::{Error, Result};
use crate::key::Key;
use crate::partition::TrafficStats;
use crate::semiring::{Scalar, Semiring};
use crate::tsv::RawEvent;

pub const DEFAULT_BUFFER_CAPACITY: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowMode {
    FixedM,
    FixedT,
}

impl WindowMode {
    pub fn parse(name: &str) -> Result<WindowMode> {
        match name {
            "fixed-m" => Ok(WindowMode::FixedM),
            "fixed-t" => Ok(WindowMode::FixedT),
            other => Err(Error::InvalidConfig(format!(
                "unknown window mode `{other}` (valid: fixed-m, fixed-t)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StreamConfig {
    pub mode: WindowMode,
    /// Events per level-0 window (fixed-m).
    pub m: usize,
    /// Seconds per level-0 window (fixed-t).
    pub t: f64,
    /// Sampling interval; `m = t / dt` and `f = 1 / dt`.
    pub dt: f64,
    pub levels: usize,
    pub buffer_capacity: usize,
}

impl StreamConfig {
    pub fn fixed_m(m: usize, levels: usize) -> Self {
        StreamConfig {
            mode: WindowMode::FixedM,
            m,
            t: 1.0,
            dt: 1.0,
            levels,
            buffer_capacity: DEFAULT_BUFFER_CAPACITY,
        }
    }

    pub fn fixed_t(t: f64, levels: usize) -> Self {
        StreamConfig {
            mode: WindowMode::FixedT,
            m: 1,
            t,
            dt: t,
            levels,
            buffer_capacity: DEFAULT_BUFFER_CAPACITY,
        }
    }

    pub fn with_capacity(mut self, buffer_capacity: usize) -> Self {
        self.buffer_capacity = buffer_capacity;
        self
    }

    pub fn sampling_frequency(&self) -> f64 {
        1.0 / self.dt
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            WindowMode::FixedM if self.m < 1 => {
                return Err(Error::InvalidConfig("m must be at least 1".into()))
            }
            WindowMode::FixedT if !(self.t > 0.0 && self.t.is_finite()) => {
                return Err(Error::InvalidConfig("t must be a positive number of seconds".into()))
            }
            _ => {}
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig("dt must be positive".into()));
        }
        if self.levels < 1 {
            return Err(Error::InvalidConfig("levels must be at least 1".into()));
        }
        if self.buffer_capacity < 1 {
            return Err(Error::InvalidConfig("buffer capacity must be at least 1".into()));
        }
        Ok(())
    }
}

/// The stretch of the stream a window covers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Span {
    /// Ordinal of the first event, 0-based.
    pub first_event: u64,
    /// One past the ordinal of the last event.
    pub end_event: u64,
    /// Fixed-t: the window interval `[start, end)`. Fixed-m: the first and
    /// last event timestamps. `None` for an empty fixed-m window.
    pub time: Option<(f64, f64)>,
}

impl Span {
    pub fn events(&self) -> std::ops::Range<usize> {
        self.first_event as usize..self.end_event as usize
    }

    fn join(&self, later: &Span) -> Span {
        let time = match (self.time, later.time) {
            (Some((a, _)), Some((_, b))) => Some((a, b)),
            (a, None) => a,
            (None, b) => b,
        };
        Span {
            first_event: self.first_event,
            end_event: later.end_event,
            time,
        }
    }
}

/// An immutable snapshot of one completed window.
#[derive(Debug)]
pub struct WindowedMatrix<S: Semiring> {
    pub level: usize,
    pub index: u64,
    pub matrix: Arc<AssocArray<S>>,
    pub span: Span,
    pub partial: bool,
}

impl<S: Semiring> Clone for WindowedMatrix<S> {
    fn clone(&self) -> Self {
        WindowedMatrix {
            level: self.level,
            index: self.index,
            matrix: Arc::clone(&self.matrix),
            span: self.span,
            partial: self.partial,
        }
    }
}

/// One JSON line per window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowRecord {
    pub level: usize,
    pub index: u64,
    pub nnz: usize,
    pub stats: TrafficStats,
    pub partial: bool,
}

/// Full serialization including every stored entry.
#[derive(Serialize)]
pub struct WindowDump<'a, V> {
    pub level: usize,
    pub index: u64,
    pub partial: bool,
    pub span: Span,
    pub entries: Vec<(&'a Key, &'a Key, &'a V)>,
}

impl<S: Semiring> WindowedMatrix<S> {
    pub fn dump(&self) -> WindowDump<'_, S::Value> {
        WindowDump {
            level: self.level,
            index: self.index,
            partial: self.partial,
            span: self.span,
            entries: self.matrix.iter().collect(),
        }
    }
}

impl<S: Semiring<Value = Scalar>> WindowedMatrix<S> {
    pub fn stats(&self) -> TrafficStats {
        TrafficStats::of(&self.matrix)
    }

    pub fn record(&self) -> WindowRecord {
        WindowRecord {
            level: self.level,
            index: self.index,
            nnz: self.matrix.nnz(),
            stats: self.stats(),
            partial: self.partial,
        }
    }
}

/// Fixed-capacity store of the most recent windows of one level.
#[derive(Clone, Debug)]
pub struct RingBuffer<S: Semiring> {
    capacity: usize,
    windows: VecDeque<WindowedMatrix<S>>,
    produced: u64,
}

impl<S: Semiring> RingBuffer<S> {
    pub fn new(capacity: usize) -> Self {
        RingBuffer {
            capacity,
            windows: VecDeque::with_capacity(capacity),
            produced: 0,
        }
    }

    pub fn push(&mut self, w: WindowedMatrix<S>) {
        if self.windows.len() == self.capacity {
            self.windows.pop_front();
        }
        self.windows.push_back(w);
        self.produced += 1;
    }

    /// Windows ever pushed.
    pub fn produced(&self) -> u64 {
        self.produced
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WindowedMatrix<S>> {
        self.windows.iter()
    }

    pub fn indices(&self) -> Vec<u64> {
        self.windows.iter().map(|w| w.index).collect()
    }
}

/// Result of looking up a window by level and index.
#[derive(Clone, Debug)]
pub enum Lookup<S: Semiring> {
    Found(WindowedMatrix<S>),
    Evicted,
    NotYetComplete,
}

struct OpenWindow<V> {
    events: Vec<(Key, Key, V)>,
    first_event: u64,
    first_time: Option<f64>,
    last_time: Option<f64>,
    bucket: i64,
}

pub struct StreamEngine<S: Semiring> {
    semiring: Arc<S>,
    config: StreamConfig,
    rings: Vec<RingBuffer<S>>,
    // unpaired completed window per level
    pending: Vec<Option<WindowedMatrix<S>>>,
    open: Option<OpenWindow<S::Value>>,
    ingested: u64,
    last_timestamp: Option<f64>,
    flushed: bool,
}

impl<S: Semiring> StreamEngine<S> {
    pub fn new(semiring: Arc<S>, config: StreamConfig) -> Result<Self> {
        config.validate()?;
        let levels = config.levels;
        Ok(StreamEngine {
            semiring,
            rings: (0..levels).map(|_| RingBuffer::new(config.buffer_capacity)).collect(),
            pending: (0..levels).map(|_| None).collect(),
            config,
            open: None,
            ingested: 0,
            last_timestamp: None,
            flushed: false,
        })
    }

    pub fn config(&self) -> &StreamConfig {
        &self.config
    }

    pub fn ring(&self, level: usize) -> Option<&RingBuffer<S>> {
        self.rings.get(level)
    }

    /// Adds one event, returning every window it completed in completion
    /// order: the level-0 window first, then the cascade upward.
    pub fn ingest(&mut self, event: RawEvent<S::Value>) -> Result<Vec<WindowedMatrix<S>>> {
        if self.flushed {
            return Err(Error::InvalidConfig("stream has already been flushed".into()));
        }
        self.semiring.validate(&event.count)?;
        let mut done = Vec::new();
        match self.config.mode {
            WindowMode::FixedM => {
                self.open_window(0).events.push((event.src, event.dst, event.count));
                self.touch(event.timestamp);
                if self.open.as_ref().map_or(0, |w| w.events.len()) == self.config.m {
                    self.close(&mut done)?;
                }
            }
            WindowMode::FixedT => {
                if let Some(prev) = self.last_timestamp {
                    if event.timestamp < prev {
                        return Err(Error::OutOfOrder {
                            src: event.src,
                            dst: event.dst,
                            count: format!("{:?}", event.count),
                            timestamp: event.timestamp,
                            previous: prev,
                        });
                    }
                }
                let bucket = (event.timestamp / self.config.t).floor() as i64;
                while let Some(w) = &self.open {
                    if w.bucket >= bucket {
                        break;
                    }
                    let next = w.bucket + 1;
                    self.close(&mut done)?;
                    if next < bucket {
                        self.open_window(next);
                    }
                }
                self.open_window(bucket).events.push((event.src, event.dst, event.count));
                self.touch(event.timestamp);
            }
        }
        self.ingested += 1;
        self.last_timestamp = Some(event.timestamp);
        Ok(done)
    }

    /// Emits the open window flagged partial. It is neither buffered nor
    /// paired. No further events are accepted afterwards.
    pub fn flush(&mut self) -> Result<Vec<WindowedMatrix<S>>> {
        self.flushed = true;
        let Some(w) = self.open.take() else { return Ok(Vec::new()) };
        if w.events.is_empty() {
            return Ok(Vec::new());
        }
        let span = self.span_of(&w);
        let matrix = AssocArray::from_triples(Arc::clone(&self.semiring), w.events)?;
        Ok(vec![WindowedMatrix {
            level: 0,
            index: self.rings[0].produced(),
            matrix: Arc::new(matrix),
            span,
            partial: true,
        }])
    }

    fn open_window(&mut self, bucket: i64) -> &mut OpenWindow<S::Value> {
        let first_event = self.ingested;
        self.open.get_or_insert_with(|| OpenWindow {
            events: Vec::new(),
            first_event,
            first_time: None,
            last_time: None,
            bucket,
        })
    }

    fn touch(&mut self, ts: f64) {
        if let Some(w) = &mut self.open {
            w.first_time.get_or_insert(ts);
            w.last_time = Some(ts);
        }
    }

    fn span_of(&self, w: &OpenWindow<S::Value>) -> Span {
        let time = match self.config.mode {
            WindowMode::FixedT => {
                let t = self.config.t;
                Some((w.bucket as f64 * t, (w.bucket + 1) as f64 * t))
            }
            WindowMode::FixedM => w.first_time.zip(w.last_time),
        };
        Span {
            first_event: w.first_event,
            end_event: w.first_event + w.events.len() as u64,
            time,
        }
    }

    fn close(&mut self, done: &mut Vec<WindowedMatrix<S>>) -> Result<()> {
        let Some(w) = self.open.take() else { return Ok(()) };
        let span = self.span_of(&w);
        let matrix = AssocArray::from_triples(Arc::clone(&self.semiring), w.events)?;
        let window = WindowedMatrix {
            level: 0,
            index: self.rings[0].produced(),
            matrix: Arc::new(matrix),
            span,
            partial: false,
        };
        self.complete(window, done)
    }

    fn complete(&mut self, mut window: WindowedMatrix<S>, done: &mut Vec<WindowedMatrix<S>>) -> Result<()> {
        loop {
            let level = window.level;
            self.rings[level].push(window.clone());
            done.push(window.clone());
            if level + 1 >= self.config.levels {
                return Ok(());
            }
            match self.pending[level].take() {
                None => {
                    self.pending[level] = Some(window);
                    return Ok(());
                }
                Some(left) => {
                    let matrix = left.matrix.ewise_add(&window.matrix)?;
                    window = WindowedMatrix {
                        level: level + 1,
                        index: self.rings[level + 1].produced(),
                        matrix: Arc::new(matrix),
                        span: left.span.join(&window.span),
                        partial: false,
                    };
                }
            }
        }
    }

    pub fn level_matrix(&self, level: usize, index: u64) -> Result<Lookup<S>> {
        let ring = self.rings.get(level).ok_or(Error::UnknownLevel {
            level,
            levels: self.config.levels,
        })?;
        if index >= ring.produced() {
            return Ok(Lookup::NotYetComplete);
        }
        Ok(ring
            .iter()
            .find(|w| w.index == index)
            .map_or(Lookup::Evicted, |w| Lookup::Found(w.clone())))
    }
}

impl<S: Semiring<Value = Scalar>> StreamEngine<S> {
    /// Traffic stats of every retained window at `level`, oldest first.
    pub fn multiscale_stats(&self, level: usize) -> Vec<TrafficStats> {
        self.rings
            .get(level)
            .map(|r| r.iter().map(WindowedMatrix::stats).collect())
            .unwrap_or_default()
    }
}
