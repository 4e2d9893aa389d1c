/* tslint:disable */
/* eslint-disable */

/**
 * The set of characters at which `poly` becomes a Novikov unit.
 *
 * `poly` uses variables `t` (rank 1), `x, y` (rank 2) or `x, y, z` (rank 3),
 * e.g. `"2 + x - 3*x*y^-1"`; `domain` is `"Z"`, `"Q"` or `"GF(p)"`.
 */
export function polynomial_fan(poly: string, domain: string, extent: number): string;

/**
 * The positivity verdict for a document with meridians.
 */
export function positivity(document: string): string;

/**
 * The vanishing locus of a problem document, with a membership grid.
 */
export function vanishing_locus(document: string, extent: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly polynomial_fan: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly positivity: (a: number, b: number) => [number, number];
    readonly vanishing_locus: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
