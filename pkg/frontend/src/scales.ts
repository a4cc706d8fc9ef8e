/** Tiny scale helpers; every visual magnitude must stay monotone in its input. */

export interface LinearScale {
  (v: number): number;
  invert(px: number): number;
}

export function linear(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1; // degenerate domains map to the range start
  const scale = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as LinearScale;
  scale.invert = (px: number) => d0 + ((px - r0) / (r1 - r0 || 1)) * span;
  return scale;
}

/**
 * Proportional (zero-intercept) scale: output ratios equal input ratios,
 * which is what keeps flow stroke widths honest.
 */
export function proportional(maxValue: number, maxRange: number): (v: number) => number {
  if (maxValue <= 0) return () => 0;
  return (v: number) => (v / maxValue) * maxRange;
}

export function clamp(v: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, v));
}

/**
 * Horizon banding: map a count onto one of `bands + 1` slabs, where slab 0
 * is reserved for exact zero and slab `bands` holds the series maximum.
 */
export function horizonBand(value: number, max: number, bands = 3): number {
  if (value <= 0 || max <= 0) return 0;
  return clamp(Math.ceil((value / max) * bands), 1, bands);
}
