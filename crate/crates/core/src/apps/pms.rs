//! Unrelated parallel machine scheduling with random-key encoding.
//!
//! One key in `[0, 1]` per task. Scaling a key by the machine count, the
//! integer part picks the machine and the fractional part orders that
//! machine's queue. Each task costs its machine-specific setup plus
//! processing time; the objective is the makespan (C-max).

use crate::{Error, ObjectiveSpec, RandomSource, Result, RngStream};

/// Processing times of the 2-machine, 20-task reference instance.
pub const REFERENCE_PROCESSING: [[u32; 20]; 2] = [
    [
        42, 13, 43, 31, 14, 42, 23, 13, 48, 14, 10, 18, 18, 29, 13, 10, 42, 34, 22, 27,
    ],
    [
        38, 13, 20, 20, 25, 38, 14, 29, 12, 38, 26, 21, 27, 48, 20, 14, 14, 15, 30, 17,
    ],
];
pub const REFERENCE_SETUP_RANGE: (u32, u32) = (3, 9);
pub const REFERENCE_SETUP_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmsInstance {
    /// `machines x tasks` processing times.
    pub processing: Vec<Vec<u32>>,
    /// `machines x tasks` setup times, frozen at construction.
    pub setup: Vec<Vec<u32>>,
}

impl PmsInstance {
    /// Samples each setup time uniformly from the inclusive `setup_range`,
    /// row by row, from `rng`.
    pub fn with_random_setups<R: RandomSource + ?Sized>(
        processing: Vec<Vec<u32>>,
        setup_range: (u32, u32),
        rng: &mut R,
    ) -> Result<Self> {
        let (lo, hi) = setup_range;
        if lo > hi {
            return Err(Error::InvalidInstance(format!("setup range [{lo}, {hi}] is inverted")));
        }
        let span = (hi - lo + 1) as usize;
        let setup = processing
            .iter()
            .map(|row| row.iter().map(|_| lo + rng.index(span) as u32).collect())
            .collect();
        Self::new(processing, setup)
    }

    pub fn new(processing: Vec<Vec<u32>>, setup: Vec<Vec<u32>>) -> Result<Self> {
        let tasks = processing
            .first()
            .map(Vec::len)
            .ok_or(Error::EmptyInput("processing matrix"))?;
        if tasks == 0 {
            return Err(Error::InvalidInstance("at least one task is required".into()));
        }
        for (row, r) in processing.iter().enumerate() {
            if r.len() != tasks {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: tasks,
                    got: r.len(),
                });
            }
        }
        if processing.iter().flatten().any(|&p| p == 0) {
            return Err(Error::InvalidInstance("processing times must be positive".into()));
        }
        if setup.len() != processing.len() {
            return Err(Error::DimensionMismatch {
                expected: processing.len(),
                got: setup.len(),
            });
        }
        for (row, r) in setup.iter().enumerate() {
            if r.len() != tasks {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: tasks,
                    got: r.len(),
                });
            }
        }
        Ok(Self { processing, setup })
    }

    /// The reference instance with setups drawn from `RngStream::new(seed)`.
    pub fn reference_2x20(seed: u64) -> Self {
        let processing = REFERENCE_PROCESSING.iter().map(|r| r.to_vec()).collect();
        Self::with_random_setups(processing, REFERENCE_SETUP_RANGE, &mut RngStream::new(seed))
            .expect("reference instance is valid")
    }

    pub fn machines(&self) -> usize {
        self.processing.len()
    }

    pub fn tasks(&self) -> usize {
        self.processing[0].len()
    }

    /// Setup plus processing of `task` on `machine`.
    pub fn task_time(&self, machine: usize, task: usize) -> u64 {
        u64::from(self.setup[machine][task]) + u64::from(self.processing[machine][task])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    /// Task order on each machine.
    pub sequences: Vec<Vec<usize>>,
    pub completion: Vec<u64>,
    pub cmax: u64,
}

impl Schedule {
    /// `(start, setup_end, end)` of every task in each machine's queue.
    pub fn timeline(&self, inst: &PmsInstance) -> Vec<Vec<(usize, u64, u64, u64)>> {
        self.sequences
            .iter()
            .enumerate()
            .map(|(m, seq)| {
                let mut t = 0;
                seq.iter()
                    .map(|&task| {
                        let start = t;
                        let ready = start + u64::from(inst.setup[m][task]);
                        t = ready + u64::from(inst.processing[m][task]);
                        (task, start, ready, t)
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn decode_schedule(inst: &PmsInstance, keys: &[f64]) -> Schedule {
    let machines = inst.machines();
    let mut queues: Vec<Vec<(f64, usize)>> = vec![Vec::new(); machines];
    for (task, &k) in keys.iter().enumerate().take(inst.tasks()) {
        let scaled = k.clamp(0.0, 1.0) * machines as f64;
        let machine = (scaled.floor() as usize).min(machines - 1);
        queues[machine].push((scaled - machine as f64, task));
    }
    let sequences: Vec<Vec<usize>> = queues
        .into_iter()
        .map(|mut q| {
            q.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            q.into_iter().map(|(_, t)| t).collect()
        })
        .collect();
    let completion: Vec<u64> = sequences
        .iter()
        .enumerate()
        .map(|(m, seq)| seq.iter().map(|&t| inst.task_time(m, t)).sum())
        .collect();
    let cmax = completion.iter().copied().max().unwrap_or(0);
    Schedule {
        sequences,
        completion,
        cmax,
    }
}

pub fn pms_objective(inst: &PmsInstance) -> Result<ObjectiveSpec> {
    let owned = inst.clone();
    ObjectiveSpec::uniform(
        format!("pms-{}x{}", inst.machines(), inst.tasks()),
        inst.tasks(),
        0.0,
        1.0,
        move |x| decode_schedule(&owned, x).cmax as f64,
    )
}
