/**
 * Service spans and cursors are byte offsets into the UTF-8 text;
 * JavaScript strings index UTF-16 code units. These helpers convert.
 */

const encoder = new TextEncoder();

/** UTF-8 byte length of the first `chars` UTF-16 code units of `text`. */
export function charToByte(text: string, chars: number): number {
  return encoder.encode(text.slice(0, chars)).length;
}

/** UTF-16 index corresponding to a UTF-8 byte offset (clamped to bounds). */
export function byteToChar(text: string, byte: number): number {
  if (byte <= 0) return 0;
  let bytes = 0;
  let index = 0;
  for (const ch of text) {
    const next = bytes + encoder.encode(ch).length;
    if (next > byte) return index;
    bytes = next;
    index += ch.length;
    if (bytes >= byte) return index;
  }
  return text.length;
}

export function sliceBytes(text: string, start: number, end: number): string {
  return text.slice(byteToChar(text, start), byteToChar(text, end));
}
