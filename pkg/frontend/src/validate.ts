import type { StoryboardDocument } from "./types";

const PAGE_PATTERN = /^pages\/.+\.svg$/;

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isStringPair(value: unknown): value is [string, string] {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    value.every((item) => typeof item === "string")
  );
}

/** Structural check mirroring the emitter's storyboard.json schema.
 *  Returns a list of problems; an empty list means the document is usable.
 *  The viewer refuses to render anything when this is non-empty. */
export function validateStoryboard(value: unknown): string[] {
  const errors: string[] = [];
  if (!isRecord(value)) {
    return ["document is not a JSON object"];
  }
  if (typeof value.app_id !== "string" || value.app_id.length === 0) {
    errors.push("app_id must be a non-empty string");
  }

  const names = new Set<string>();
  if (!Array.isArray(value.nodes)) {
    errors.push("nodes must be an array");
  } else {
    value.nodes.forEach((node, i) => {
      if (!isRecord(node)) {
        errors.push(`nodes[${i}] is not an object`);
        return;
      }
      for (const field of ["class_name", "display_name", "page", "layout_code", "activity_code"]) {
        if (typeof node[field] !== "string") {
          errors.push(`nodes[${i}].${field} must be a string`);
        }
      }
      if (typeof node.page === "string" && !PAGE_PATTERN.test(node.page)) {
        errors.push(`nodes[${i}].page must look like pages/<name>.svg`);
      }
      if (
        !Array.isArray(node.method_hierarchy) ||
        !node.method_hierarchy.every(isStringPair)
      ) {
        errors.push(`nodes[${i}].method_hierarchy must be an array of [caller, callee] pairs`);
      }
      if (node.fragment_pages !== undefined) {
        const ok =
          Array.isArray(node.fragment_pages) &&
          node.fragment_pages.every(
            (f) =>
              isRecord(f) &&
              typeof f.name === "string" &&
              typeof f.page === "string" &&
              PAGE_PATTERN.test(f.page),
          );
        if (!ok) {
          errors.push(`nodes[${i}].fragment_pages must be {name, page} objects`);
        }
      }
      if (typeof node.class_name === "string") {
        names.add(node.class_name);
      }
    });
  }

  if (!Array.isArray(value.edges) || !value.edges.every(isStringPair)) {
    errors.push("edges must be an array of [source, target] pairs");
  } else if (errors.length === 0) {
    value.edges.forEach(([source, target], i) => {
      if (!names.has(source) || !names.has(target)) {
        errors.push(`edges[${i}] references an unknown activity (${source} -> ${target})`);
      }
    });
  }

  if (value.warnings !== undefined) {
    const ok =
      Array.isArray(value.warnings) &&
      value.warnings.every((w) => typeof w === "string");
    if (!ok) {
      errors.push("warnings must be an array of strings");
    }
  }
  return errors;
}

/** Parse + validate in one step. Throws Error with a readable message so the
 *  caller can show the banner; never returns a partially-valid document. */
export function parseStoryboard(data: unknown): StoryboardDocument {
  let value = data;
  if (typeof data === "string") {
    try {
      value = JSON.parse(data);
    } catch (exc) {
      throw new Error(`storyboard is not valid JSON: ${(exc as Error).message}`);
    }
  }
  const errors = validateStoryboard(value);
  if (errors.length > 0) {
    throw new Error(`storyboard document invalid: ${errors[0]}`);
  }
  return value as StoryboardDocument;
}
