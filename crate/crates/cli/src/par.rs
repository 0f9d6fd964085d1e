//! Deterministic bounded parallelism: items are mapped by a worker pool but
//! every result lands in its input slot, so the output order (and hence
//! every downstream report byte) is independent of the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub fn map_indexed<T, U, F>(threads: usize, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<U>>> = (0..items.len()).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let out = f(&items[i]);
                *slots[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("slot filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_across_thread_counts() {
        let items: Vec<u64> = (0..250).collect();
        let square = |x: &u64| x * x;
        let one = map_indexed(1, &items, square);
        let four = map_indexed(4, &items, square);
        let many = map_indexed(16, &items, square);
        assert_eq!(one, four);
        assert_eq!(one, many);
        assert_eq!(one[13], 169);
    }
}
