/* tslint:disable */
/* eslint-disable */

export class DensityProfile {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * NaN for `m = 0` and `m = n`.
     */
    readonly criticalRadius: number;
    readonly density: Float64Array;
    readonly expected: number;
    /**
     * Leading-order density, NaN where it is undefined.
     */
    readonly leading: Float64Array;
    readonly r: Float64Array;
}

export class LemniscateView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Row-major, row 0 at the top (largest imaginary part); 1 where reversing.
     */
    readonly cells: Uint8Array;
    readonly components: number;
    readonly halfWidth: number;
    readonly resolution: number;
    readonly touchingBoundary: number;
}

export class ZeroView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly certified: boolean;
    readonly im: Float64Array;
    readonly nMinus: number;
    readonly nPlus: number;
    /**
     * 1 for sense-preserving zeros, 0 for reversing ones.
     */
    readonly preserving: Uint8Array;
    readonly radius: number;
    readonly re: Float64Array;
}

/**
 * Radial Kac-Rice density on `points` radii in `[0, r_max]`.
 */
export function densityProfile(n: number, m: number, r_max: number, points: number): DensityProfile;

/**
 * `{|p'| < |q'|}` for one truncated-model draw on the full-disk window.
 */
export function lemniscate(n: number, m: number, seed: bigint, trial: bigint, resolution: number): LemniscateView;

/**
 * Zeros of one truncated-model draw, with orientation.
 */
export function sampleZeros(n: number, m: number, seed: bigint, trial: bigint): ZeroView;

export function version(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_densityprofile_free: (a: number, b: number) => void;
    readonly __wbg_lemniscateview_free: (a: number, b: number) => void;
    readonly __wbg_zeroview_free: (a: number, b: number) => void;
    readonly densityProfile: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly densityprofile_criticalRadius: (a: number) => number;
    readonly densityprofile_density: (a: number) => [number, number];
    readonly densityprofile_expected: (a: number) => number;
    readonly densityprofile_leading: (a: number) => [number, number];
    readonly densityprofile_r: (a: number) => [number, number];
    readonly lemniscate: (a: number, b: number, c: bigint, d: bigint, e: number) => [number, number, number];
    readonly lemniscateview_cells: (a: number) => [number, number];
    readonly lemniscateview_components: (a: number) => number;
    readonly lemniscateview_halfWidth: (a: number) => number;
    readonly lemniscateview_resolution: (a: number) => number;
    readonly lemniscateview_touchingBoundary: (a: number) => number;
    readonly sampleZeros: (a: number, b: number, c: bigint, d: bigint) => [number, number, number];
    readonly version: () => [number, number];
    readonly zeroview_certified: (a: number) => number;
    readonly zeroview_im: (a: number) => [number, number];
    readonly zeroview_nMinus: (a: number) => number;
    readonly zeroview_nPlus: (a: number) => number;
    readonly zeroview_preserving: (a: number) => [number, number];
    readonly zeroview_radius: (a: number) => number;
    readonly zeroview_re: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
