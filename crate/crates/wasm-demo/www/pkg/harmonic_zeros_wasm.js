/* @ts-self-types="./harmonic_zeros_wasm.d.ts" */

export class DensityProfile {
    static __wrap(ptr) {
        const obj = Object.create(DensityProfile.prototype);
        obj.__wbg_ptr = ptr;
        DensityProfileFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        DensityProfileFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_densityprofile_free(ptr, 0);
    }
    /**
     * NaN for `m = 0` and `m = n`.
     * @returns {number}
     */
    get criticalRadius() {
        const ret = wasm.densityprofile_criticalRadius(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get density() {
        const ret = wasm.densityprofile_density(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get expected() {
        const ret = wasm.densityprofile_expected(this.__wbg_ptr);
        return ret;
    }
    /**
     * Leading-order density, NaN where it is undefined.
     * @returns {Float64Array}
     */
    get leading() {
        const ret = wasm.densityprofile_leading(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get r() {
        const ret = wasm.densityprofile_r(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) DensityProfile.prototype[Symbol.dispose] = DensityProfile.prototype.free;

export class LemniscateView {
    static __wrap(ptr) {
        const obj = Object.create(LemniscateView.prototype);
        obj.__wbg_ptr = ptr;
        LemniscateViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        LemniscateViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_lemniscateview_free(ptr, 0);
    }
    /**
     * Row-major, row 0 at the top (largest imaginary part); 1 where reversing.
     * @returns {Uint8Array}
     */
    get cells() {
        const ret = wasm.lemniscateview_cells(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @returns {number}
     */
    get components() {
        const ret = wasm.lemniscateview_components(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get halfWidth() {
        const ret = wasm.lemniscateview_halfWidth(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get resolution() {
        const ret = wasm.lemniscateview_resolution(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get touchingBoundary() {
        const ret = wasm.lemniscateview_touchingBoundary(this.__wbg_ptr);
        return ret >>> 0;
    }
}
if (Symbol.dispose) LemniscateView.prototype[Symbol.dispose] = LemniscateView.prototype.free;

export class ZeroView {
    static __wrap(ptr) {
        const obj = Object.create(ZeroView.prototype);
        obj.__wbg_ptr = ptr;
        ZeroViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ZeroViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_zeroview_free(ptr, 0);
    }
    /**
     * @returns {boolean}
     */
    get certified() {
        const ret = wasm.zeroview_certified(this.__wbg_ptr);
        return ret !== 0;
    }
    /**
     * @returns {Float64Array}
     */
    get im() {
        const ret = wasm.zeroview_im(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get nMinus() {
        const ret = wasm.zeroview_nMinus(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get nPlus() {
        const ret = wasm.zeroview_nPlus(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * 1 for sense-preserving zeros, 0 for reversing ones.
     * @returns {Uint8Array}
     */
    get preserving() {
        const ret = wasm.zeroview_preserving(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @returns {number}
     */
    get radius() {
        const ret = wasm.zeroview_radius(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get re() {
        const ret = wasm.zeroview_re(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) ZeroView.prototype[Symbol.dispose] = ZeroView.prototype.free;

/**
 * Radial Kac-Rice density on `points` radii in `[0, r_max]`.
 * @param {number} n
 * @param {number} m
 * @param {number} r_max
 * @param {number} points
 * @returns {DensityProfile}
 */
export function densityProfile(n, m, r_max, points) {
    const ret = wasm.densityProfile(n, m, r_max, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return DensityProfile.__wrap(ret[0]);
}

/**
 * `{|p'| < |q'|}` for one truncated-model draw on the full-disk window.
 * @param {number} n
 * @param {number} m
 * @param {bigint} seed
 * @param {bigint} trial
 * @param {number} resolution
 * @returns {LemniscateView}
 */
export function lemniscate(n, m, seed, trial, resolution) {
    const ret = wasm.lemniscate(n, m, seed, trial, resolution);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return LemniscateView.__wrap(ret[0]);
}

/**
 * Zeros of one truncated-model draw, with orientation.
 * @param {number} n
 * @param {number} m
 * @param {bigint} seed
 * @param {bigint} trial
 * @returns {ZeroView}
 */
export function sampleZeros(n, m, seed, trial) {
    const ret = wasm.sampleZeros(n, m, seed, trial);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ZeroView.__wrap(ret[0]);
}

/**
 * @returns {string}
 */
export function version() {
    let deferred1_0;
    let deferred1_1;
    try {
        const ret = wasm.version();
        deferred1_0 = ret[0];
        deferred1_1 = ret[1];
        return getStringFromWasm0(ret[0], ret[1]);
    } finally {
        wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
    }
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./harmonic_zeros_wasm_bg.js": import0,
    };
}

const DensityProfileFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_densityprofile_free(ptr, 1));
const LemniscateViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_lemniscateview_free(ptr, 1));
const ZeroViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_zeroview_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('harmonic_zeros_wasm_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
