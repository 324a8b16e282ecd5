export class ModelNotFoundError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ModelNotFoundError";
  }
}

export class EmptyInputError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "EmptyInputError";
  }
}

export class InputFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "InputFormatError";
  }
}
