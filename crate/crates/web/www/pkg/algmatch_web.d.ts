/* tslint:disable */
/* eslint-disable */

/**
 * Edge indices of a perfect matching with exactly `k` heavy edges.
 */
export function exact_matching(graph: string, k: number, seed: bigint): Uint32Array | undefined;

/**
 * Edge indices of a perfect matching, or `undefined` if none was found.
 */
export function perfect_matching(graph: string, seed: bigint): Uint32Array | undefined;

/**
 * `feasible[k]` for `k = 0..=n/2`.
 */
export function weight_profile(graph: string, seed: bigint): Uint8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly exact_matching: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
    readonly perfect_matching: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly weight_profile: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
