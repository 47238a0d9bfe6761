/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_densityprofile_free: (a: number, b: number) => void;
export const __wbg_lemniscateview_free: (a: number, b: number) => void;
export const __wbg_zeroview_free: (a: number, b: number) => void;
export const densityProfile: (a: number, b: number, c: number, d: number) => [number, number, number];
export const densityprofile_criticalRadius: (a: number) => number;
export const densityprofile_density: (a: number) => [number, number];
export const densityprofile_expected: (a: number) => number;
export const densityprofile_leading: (a: number) => [number, number];
export const densityprofile_r: (a: number) => [number, number];
export const lemniscate: (a: number, b: number, c: bigint, d: bigint, e: number) => [number, number, number];
export const lemniscateview_cells: (a: number) => [number, number];
export const lemniscateview_components: (a: number) => number;
export const lemniscateview_halfWidth: (a: number) => number;
export const lemniscateview_resolution: (a: number) => number;
export const lemniscateview_touchingBoundary: (a: number) => number;
export const sampleZeros: (a: number, b: number, c: bigint, d: bigint) => [number, number, number];
export const version: () => [number, number];
export const zeroview_certified: (a: number) => number;
export const zeroview_im: (a: number) => [number, number];
export const zeroview_nMinus: (a: number) => number;
export const zeroview_nPlus: (a: number) => number;
export const zeroview_preserving: (a: number) => [number, number];
export const zeroview_radius: (a: number) => number;
export const zeroview_re: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
