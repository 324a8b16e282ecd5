import { EmptyInputError, InputFormatError } from "./errors.js";

export interface InputItem {
  id: string;
  text: string;
}

/**
 * Parse an input file: one item per line, either plain text or
 * `id<TAB>text`. Blank lines are skipped; plain-text lines get
 * zero-padded positional ids so output order is self-describing.
 */
export function parseItems(content: string, sourceName: string): InputItem[] {
  const items: InputItem[] = [];
  const lines = content.split("\n");
  for (let lineno = 1; lineno <= lines.length; lineno++) {
    const line = lines[lineno - 1].replace(/\r$/, "");
    if (!line.trim()) {
      continue;
    }
    const tab = line.indexOf("\t");
    if (tab >= 0) {
      const id = line.slice(0, tab);
      const text = line.slice(tab + 1).trim();
      if (!id || !text) {
        throw new InputFormatError(
          `${sourceName}:${lineno}: expected "id<TAB>text" with both parts non-empty`,
        );
      }
      items.push({ id, text });
    } else {
      items.push({ id: `item-${String(items.length + 1).padStart(4, "0")}`, text: line.trim() });
    }
  }
  if (items.length === 0) {
    throw new EmptyInputError(`${sourceName}: no input items`);
  }
  const seen = new Set<string>();
  for (const item of items) {
    if (seen.has(item.id)) {
      throw new InputFormatError(`${sourceName}: duplicate id ${JSON.stringify(item.id)}`);
    }
    seen.add(item.id);
  }
  return items;
}
