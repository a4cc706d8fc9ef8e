import { describe, expect, it } from "vitest";

import { clamp, horizonBand, linear, proportional } from "../src/scales.js";

describe("linear", () => {
  it("maps domain endpoints onto range endpoints", () => {
    const s = linear([0, 10], [100, 200]);
    expect(s(0)).toBe(100);
    expect(s(10)).toBe(200);
    expect(s(5)).toBe(150);
  });

  it("inverts back to the domain", () => {
    const s = linear([2000, 2020], [0, 720]);
    expect(s.invert(s(2013))).toBeCloseTo(2013, 9);
  });

  it("collapses a degenerate domain to the range start", () => {
    const s = linear([5, 5], [0, 100]);
    expect(s(5)).toBe(0);
  });
});

describe("proportional", () => {
  it("preserves input ratios exactly", () => {
    const widthOf = proportional(10, 16);
    expect(widthOf(10) / widthOf(1)).toBeCloseTo(10, 12);
    expect(widthOf(4) / widthOf(2)).toBeCloseTo(2, 12);
  });

  it("passes through zero", () => {
    expect(proportional(10, 16)(0)).toBe(0);
  });

  it("degrades to zero when the maximum is not positive", () => {
    expect(proportional(0, 16)(5)).toBe(0);
  });

  it("is monotone", () => {
    const s = proportional(7, 12);
    let prev = -1;
    for (let v = 0; v <= 7; v += 0.5) {
      const out = s(v);
      expect(out).toBeGreaterThan(prev);
      prev = out;
    }
  });
});

describe("clamp", () => {
  it("bounds values on both sides", () => {
    expect(clamp(-1, 0, 10)).toBe(0);
    expect(clamp(11, 0, 10)).toBe(10);
    expect(clamp(4, 0, 10)).toBe(4);
  });
});

describe("horizonBand", () => {
  it("reserves band 0 for exact zero", () => {
    expect(horizonBand(0, 9)).toBe(0);
    expect(horizonBand(0, 0)).toBe(0);
  });

  it("puts the maximum in the darkest band", () => {
    expect(horizonBand(9, 9)).toBe(3);
    expect(horizonBand(9, 9, 5)).toBe(5);
  });

  it("puts any tiny positive value in band 1", () => {
    expect(horizonBand(0.001, 100)).toBe(1);
  });

  it("is monotone in the value", () => {
    const bands = [1, 2, 3, 4, 5, 6].map((v) => horizonBand(v, 6));
    for (let i = 1; i < bands.length; i++) {
      expect(bands[i]).toBeGreaterThanOrEqual(bands[i - 1]);
    }
    expect(bands[bands.length - 1]).toBe(3);
  });
});
